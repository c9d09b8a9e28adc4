#include <doctest.h>

#include "dla/report.hpp"
#include "dla/spec_io.hpp"

using namespace dla;

namespace {
Analysis run(const HamiltonianSpec& s) { return analyze({drift_generator(s)}, internal_layout(s)); }
}  // namespace

TEST_CASE("sha256 test vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("analysis report fields and determinism") {
  const Tolerances tol;
  const Analysis a = run(xx_prime());
  const nlohmann::json j = analysis_json(a, tol, "h", "analyze");
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["input_hash"] == "h");
  CHECK(j["algebra_ranks"]["L"] == 15);
  CHECK(j["algebra_ranks"]["L_d"] == 2);
  CHECK(j["theorem1"]["pass"] == true);
  CHECK(j["blocks"].size() == 1);
  CHECK(j.contains("fragile_flags"));
  CHECK(analysis_status(a) == Status::Pass);
  const Analysis b = run(xx_prime());
  CHECK(analysis_json(b, tol, "h", "analyze").dump(2) == j.dump(2));
  const std::string text = text_summary(j);
  CHECK(text.find("S") != std::string::npos);
}

TEST_CASE("partial stages report what they reached") {
  const HamiltonianSpec s = xx_prime();
  const Analysis a = analyze({drift_generator(s)}, internal_layout(s), {}, Stage::Closure);
  const nlohmann::json j = analysis_json(a, {}, "", "closure");
  CHECK(j["algebra_ranks"]["L"] == 15);
  CHECK(j["blocks"].empty());
}

TEST_CASE("expansion report") {
  const Tolerances tol;
  const Analysis a = run(xx_prime());
  const ExpansionReport e = ancilla_expand(a, 2, tol);
  const nlohmann::json j = expansion_json(a, e, tol, "h", 2);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(expansion_status(a, e) == Status::Pass);
}

TEST_CASE("check: matching and mismatched declarations") {
  const Tolerances tol;
  const HamiltonianSpec good =
      parse_spec("sites: [2,2,2]; S: [0]; term: 1 XXI; term: 1 YYI; term: 1 IXX\n"
                 "structure: regime2; block: S4 A=2 zstar=1,1");
  const Analysis a = run(good);
  const CheckResult c = run_check(*good.structure, a, tol);
  CHECK(c.sufficiency.pass);
  CHECK(c.types_match);
  CHECK(c.pass);

  const HamiltonianSpec bad =
      parse_spec("sites: [2,2,2]; S: [0]; term: 1 XXI; term: 1 YYI; term: 1 IXX\n"
                 "structure: regime2; block: R A=2; block: R A=2");
  const CheckResult d = run_check(*bad.structure, a, tol);
  CHECK_FALSE(d.pass);
  CHECK(d.overlaps.size() == 2);
  CHECK(check_json(a, d, tol, "h")["check"]["pass"] == false);
}

TEST_CASE("status names") {
  CHECK(status_name(Status::Pass) != status_name(Status::Fragile));
}
