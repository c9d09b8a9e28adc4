#include "dla/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

namespace dla {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::InputError: return "input_error";
    case Status::Structural: return "structural_failure";
    case Status::Fragile: return "fragile";
  }
  return "?";
}

json tolerances_json(const Tolerances& tol) {
  return {{"tau_rank", tol.tau_rank},
          {"tau_herm", tol.tau_herm},
          {"tau_frame", tol.tau_frame},
          {"tau_spec", tol.tau_spec},
          {"tau_check", tol.tau_check}};
}

json type_json(const JordanType& t) {
  json j{{"type", t.label()},
         {"pretty", t.pretty()},
         {"dim_a", t.dim_a},
         {"q_dims", t.q_dims},
         {"dim", t.block_dim()},
         {"algebra_dim", t.algebra_dim()}};
  auto fd = t.factor_dims();
  std::sort(fd.begin(), fd.end());
  j["factor_dims_multiset"] = fd;
  if (t.has_zstar()) j["zstar"] = {{"plus", t.zstar_plus}, {"minus", t.zstar_minus}};
  return j;
}

namespace {

json relation_json(const RelationCheck& c) {
  return {{"name", c.name}, {"residual", c.residual}, {"holds", c.holds}, {"required", c.required}};
}

json ranks_json(const Analysis& a) {
  return {{"L", a.triple.L.rank()},
          {"L_c", a.triple.L_c.rank()},
          {"L_d", a.triple.L_d.rank()},
          {"L_d_cap_L", a.triple.L_d_cap_L.rank()},
          {"L_d_cap_L_traceless", a.triple.L_d_cap_L_traceless.rank()}};
}

json theorem1_json(const Theorem1Report& t) {
  json j{{"pass", t.pass},
         {"residuals",
          {{"inclusion", t.inclusion_residual},
           {"cap_rank", t.cap_rank},
           {"split", t.split_residual},
           {"split_rank_match", t.split_rank_match}}}};
  if (!t.failure.empty()) j["failure"] = t.failure;
  if (t.violating_element) j["violating_element"] = *t.violating_element;
  return j;
}

json blocks_json(const Analysis& a) {
  json arr = json::array();
  const bool have_structure = a.reached == Stage::Analyze;
  for (std::size_t i = 0; i < a.classification.blocks.size(); ++i) {
    const auto& b = a.classification.blocks[i];
    json j = type_json(b.type);
    j["index"] = i;
    j["chi"] = b.chi;
    j["gamma"] = b.frame_indices.size();
    if (have_structure) {
      const auto& bs = a.structure.blocks[i];
      j["isometry_residual"] = bs.iso.residual;
      if (a.structure.regime == 3) {
        j["dim_b"] = bs.dim_b;
        j["dim_r"] = bs.dim_r;
      }
    }
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

Status analysis_status(const Analysis& a) {
  bool ok = a.theorem1.pass;
  if (a.reached != Stage::Closure) ok = ok && a.relations.pass;
  if (a.reached == Stage::Analyze) ok = ok && a.structure.pass;
  if (!ok) return Status::Structural;
  return a.fragile.empty() ? Status::Pass : Status::Fragile;
}

json analysis_json(const Analysis& a, const Tolerances& tol, const std::string& input_hash,
                   const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["input_hash"] = input_hash;
  j["layout"] = {{"e_dims", a.layout.e_dims()}, {"s_dims", a.layout.s_dims()}};
  j["regime"] = a.layout.dim_s() >= 3 ? 3 : 2;
  j["algebra_ranks"] = ranks_json(a);
  j["closure"] = {{"rank_log", a.closure.rank_log},
                  {"saturated", a.closure.saturated},
                  {"iterations", a.closure.iterations}};
  j["theorem1"] = theorem1_json(a.theorem1);
  j["tolerances"] = tolerances_json(tol);
  j["fragile_flags"] = a.fragile;
  j["blocks"] = json::array();
  if (a.reached != Stage::Closure) {
    json rel = json::array();
    for (const auto& c : a.relations.checks) rel.push_back(relation_json(c));
    j["identifiers"] = {{"G0_rank", a.identifiers.G0.rank()},
                        {"G1_rank", a.identifiers.G1.rank()},
                        {"relations", rel},
                        {"pass", a.relations.pass}};
  }
  if (a.reached == Stage::Classify || a.reached == Stage::Analyze) {
    j["frame"] = {{"size", a.frame.idempotents.size()},
                  {"partition", a.frame.partition},
                  {"chi", a.frame.chi},
                  {"residuals",
                   {{"idempotents", a.frame_res.idempotents},
                    {"offdiag", a.frame_res.offdiag},
                    {"mixed", a.frame_res.mixed},
                    {"completeness", a.frame_res.completeness},
                    {"trace_balance", a.frame_res.trace_balance}}}};
    j["classification"] = {{"projector_residual", a.classification.projector_residual},
                           {"dimension_audit", a.classification.dimension_audit}};
    j["blocks"] = blocks_json(a);
  }
  if (a.reached == Stage::Analyze) {
    json s{{"pass", a.structure.pass},
           {"ld_residual", a.structure.ld_residual},
           {"lc_residual", a.structure.lc_residual},
           {"isometry_residual", a.structure.isometry_residual},
           {"regime_types_ok", a.structure.regime_types_ok}};
    if (!a.structure.failure.empty()) s["failure"] = a.structure.failure;
    j["structure"] = s;
  }
  j["status"] = status_name(analysis_status(a));
  return j;
}

Status expansion_status(const Analysis& original, const ExpansionReport& e) {
  if (analysis_status(original) == Status::Structural || !e.pass) return Status::Structural;
  if (!original.fragile.empty() || !e.expanded.fragile.empty()) return Status::Fragile;
  return Status::Pass;
}

json expansion_json(const Analysis& original, const ExpansionReport& e, const Tolerances& tol,
                    const std::string& input_hash, std::size_t dim_sprime) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "expand";
  j["input_hash"] = input_hash;
  j["ancilla_dim"] = dim_sprime;
  j["original"] = analysis_json(original, tol, input_hash, "analyze");
  j["expanded"] = analysis_json(e.expanded, tol, input_hash, "analyze");
  j["regime"] = original.layout.dim_s() >= 3 ? 3 : 2;
  j["blocks"] = j["expanded"]["blocks"];
  j["algebra_ranks"] = j["expanded"]["algebra_ranks"];
  j["theorem1"] = j["expanded"]["theorem1"];
  json map = json::array();
  for (const auto& m : e.block_map) {
    map.push_back({{"original", m.original},
                   {"images", m.images},
                   {"split_expected", m.split_expected},
                   {"projector_residual", m.projector_residual},
                   {"ok", m.ok}});
  }
  j["block_map"] = map;
  j["overlaps"] = e.overlaps;
  j["ld_residual"] = e.ld_residual;
  j["survived_generators"] = {{"rank", e.survived_rank},
                              {"original_rank", e.original_rank},
                              {"residual", e.survived_residual},
                              {"match", e.survived_match}};
  j["biclosure_residual"] = e.biclosure_residual;
  j["pass"] = e.pass;
  if (!e.failure.empty()) j["failure"] = e.failure;
  std::vector<std::string> flags = original.fragile;
  flags.insert(flags.end(), e.expanded.fragile.begin(), e.expanded.fragile.end());
  j["fragile_flags"] = flags;
  j["tolerances"] = tolerances_json(tol);
  j["status"] = status_name(expansion_status(original, e));
  return j;
}

CheckResult run_check(const DeclaredStructure& s, const Analysis& a, const Tolerances& tol) {
  CheckResult c;
  c.sufficiency = sufficiency_check(s, a.layout, tol);
  for (const auto& b : s.blocks) c.declared.push_back(descriptor(b.jordan_type()));
  for (const auto& b : a.classification.blocks) c.computed.push_back(descriptor(b.type));
  auto d = c.declared, k = c.computed;
  std::sort(d.begin(), d.end());
  std::sort(k.begin(), k.end());
  c.types_match = d == k;
  std::size_t off = 0;
  for (const auto& b : s.blocks) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    const auto de = static_cast<Eigen::Index>(a.layout.dim_e());
    Mat p = Mat::Zero(de, de);
    p.block(static_cast<Eigen::Index>(off), static_cast<Eigen::Index>(off), n, n).setIdentity();
    std::vector<double> row;
    for (const auto& cb : a.classification.blocks) {
      row.push_back((p * cb.projector).trace().real() / cb.projector.trace().real());
    }
    c.overlaps.push_back(row);
    off += b.dim();
  }
  c.pass = c.sufficiency.pass && c.types_match;
  return c;
}

json check_json(const Analysis& a, const CheckResult& c, const Tolerances& tol,
                const std::string& input_hash) {
  json j = analysis_json(a, tol, input_hash, "check");
  auto desc = [](const std::vector<TypeDescriptor>& v) {
    json arr = json::array();
    for (const auto& d : v) {
      arr.push_back({{"type", d.label},
                     {"dim_a", d.dim_a},
                     {"q_dims", d.q_dims},
                     {"zstar", {{"plus", d.plus}, {"minus", d.minus}}}});
    }
    return arr;
  };
  const auto& s = c.sufficiency;
  json suf{{"closed", s.closed},
           {"closure_residual", s.closure_residual},
           {"rank_tilde", s.rank_tilde},
           {"rank_lc", s.rank_lc},
           {"rank_ld", s.rank_ld},
           {"lc_residual", s.lc_residual},
           {"ld_residual", s.ld_residual},
           {"pass", s.pass}};
  if (!s.closed) suf["violating_pair"] = {s.worst_i, s.worst_j};
  if (!s.failure.empty()) suf["failure"] = s.failure;
  j["check"] = {{"sufficiency", suf},
                {"declared", desc(c.declared)},
                {"computed", desc(c.computed)},
                {"types_match", c.types_match},
                {"overlaps", c.overlaps},
                {"pass", c.pass}};
  Status st = analysis_status(a);
  if (!c.pass) st = Status::Structural;
  j["status"] = status_name(st);
  return j;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void summarize_analysis(std::ostringstream& os, const json& j, const std::string& indent) {
  const auto& r = j["algebra_ranks"];
  os << indent << "layout    E" << j["layout"]["e_dims"].dump() << " S"
     << j["layout"]["s_dims"].dump() << "  regime " << (j["regime"] == 3 ? ">=3" : "2") << "\n";
  os << indent << "ranks     L=" << r["L"] << " L_c=" << r["L_c"] << " L_d=" << r["L_d"]
     << " L_d^L=" << r["L_d_cap_L"] << "\n";
  const auto& t = j["theorem1"];
  os << indent << "theorem1  " << (t["pass"].get<bool>() ? "pass" : "FAIL")
     << "  inclusion " << fmt(t["residuals"]["inclusion"]) << "  split "
     << fmt(t["residuals"]["split"]) << "\n";
  if (j.contains("identifiers")) {
    const auto& id = j["identifiers"];
    os << indent << "G0 rank " << id["G0_rank"] << ", G1 rank " << id["G1_rank"] << "\n";
    for (const auto& c : id["relations"]) {
      os << indent << "  " << c["name"].get<std::string>() << ": "
         << (c["holds"].get<bool>() ? "holds" : (c["required"].get<bool>() ? "FAILS" : "fails (not required)"))
         << "  " << fmt(c["residual"]) << "\n";
    }
  }
  if (!j["blocks"].empty()) {
    os << indent << "blocks\n";
    for (const auto& b : j["blocks"]) {
      os << indent << "  " << b["index"] << "  " << b["pretty"].get<std::string>() << "  dim "
         << b["dim"] << " = A" << b["dim_a"];
      for (const auto& q : b["q_dims"]) os << " x Q" << q;
      if (b.contains("zstar")) {
        os << "  Z* (+1:" << b["zstar"]["plus"] << ", -1:" << b["zstar"]["minus"] << ")";
      }
      if (b.contains("dim_b")) os << "  B" << b["dim_b"] << " x R" << b["dim_r"];
      os << "\n";
    }
  }
  if (j.contains("structure")) {
    const auto& s = j["structure"];
    os << indent << "structure " << (s["pass"].get<bool>() ? "pass" : "FAIL") << "  L_d "
       << fmt(s["ld_residual"]) << "  L_c " << fmt(s["lc_residual"]);
    if (s.contains("failure")) os << "  (" << s["failure"].get<std::string>() << ")";
    os << "\n";
  }
}

}  // namespace

std::string text_summary(const json& j) {
  std::ostringstream os;
  const std::string cmd = j.value("command", "");
  os << cmd << "  status " << j.value("status", "") << "\n";
  if (cmd == "expand") {
    os << "original\n";
    summarize_analysis(os, j["original"], "  ");
    os << "expanded (ancilla dim " << j["ancilla_dim"] << ")\n";
    summarize_analysis(os, j["expanded"], "  ");
    os << "block map\n";
    for (const auto& m : j["block_map"]) {
      os << "  " << m["original"] << " -> " << m["images"].dump()
         << (m["ok"].get<bool>() ? "" : "  MISMATCH") << "\n";
    }
    os << "L_d' vs L_d x Id  " << fmt(j["ld_residual"]) << "\n";
    const auto& s = j["survived_generators"];
    os << "survived generators rank " << s["rank"] << " (original " << s["original_rank"] << ")\n";
    if (j.contains("failure")) os << "failure: " << j["failure"].get<std::string>() << "\n";
  } else {
    summarize_analysis(os, j, "");
    if (j.contains("check")) {
      const auto& c = j["check"];
      os << "check     " << (c["pass"].get<bool>() ? "pass" : "FAIL") << "  closed "
         << c["sufficiency"]["closed"] << "  types match " << c["types_match"] << "\n";
      if (c["sufficiency"].contains("failure")) {
        os << "  " << c["sufficiency"]["failure"].get<std::string>() << "\n";
      }
      os << "  overlaps " << c["overlaps"].dump() << "\n";
    }
  }
  for (const auto& f : j["fragile_flags"]) os << "fragile: " << f.get<std::string>() << "\n";
  return os.str();
}

}  // namespace dla
