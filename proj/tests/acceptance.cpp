// One PASS/FAIL line per acceptance criterion. Exit code 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dla/canonical.hpp"
#include "dla/models.hpp"
#include "dla/pauli.hpp"
#include "dla/structure.hpp"
#include "oracles.hpp"

using namespace dla;

namespace {

struct Seen {
  std::string name;
  std::size_t dim_s = 0;
  RelationReport relations;
};
std::vector<Seen> g_seen;

Analysis remember(const std::string& name, Analysis a) {
  g_seen.push_back({name, a.layout.dim_s(), a.relations});
  return a;
}

Analysis run_spec(const HamiltonianSpec& spec) {
  return analyze({drift_generator(spec)}, internal_layout(spec));
}

struct Verdict {
  bool ok = true;
  std::ostringstream why;
  void fail(const std::string& msg) {
    if (ok) why << msg;
    ok = false;
  }
  void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

std::string sig(const JordanType& t) {
  std::ostringstream os;
  os << t.label() << " A=" << t.dim_a << " q=[";
  for (std::size_t i = 0; i < t.q_dims.size(); ++i) os << (i ? "," : "") << t.q_dims[i];
  os << "] z=(" << t.zstar_plus << "," << t.zstar_minus << ")";
  return os.str();
}

// 1
void xx_prime_block(Verdict& v) {
  const Analysis& a = remember("xx_prime", run_spec(xx_prime()));
  const auto& blocks = a.classification.blocks;
  v.require(blocks.size() == 1, "expected one block");
  if (!v.ok) return;
  const JordanType& t = blocks[0].type;
  v.require(t.tag == JordanTag::S && t.n == 4, "type " + t.label());
  v.require(t.dim_a == 2, "dim_A");
  v.require(t.q_dims == std::vector<std::size_t>{2}, "H_Q dims");
  v.require(t.zstar_plus == 1 && t.zstar_minus == 1, "Z* signature " + sig(t));
  v.require(a.frame_res.max() <= 1e-8, "frame residual");
  v.require(a.structure.pass, "structure: " + a.structure.failure);
  v.require(a.theorem1.pass, "theorem 1");
}

// 2
void xx_chain_ranks(Verdict& v) {
  for (std::size_t n : {2u, 3u}) {
    const HamiltonianSpec spec = xx_chain(n, std::vector<double>(n - 1, 1.0), std::vector<double>(n, 0.0), 0.0);
    const Analysis& a = remember("xx_chain" + std::to_string(n), run_spec(spec));
    const auto& blocks = a.classification.blocks;
    v.require(blocks.size() == 1, "N=" + std::to_string(n) + ": block count");
    if (!v.ok) return;
    const JordanType& t = blocks[0].type;
    v.require(t.tag == JordanTag::S && t.n == 2 * n - 1, "N=" + std::to_string(n) + ": " + sig(t));
    v.require(t.dim_a == 1, "dim_A");
    v.require(t.q_dims == std::vector<std::size_t>(n - 1, 2), "H_Q dims " + sig(t));

    const std::size_t d = a.layout.dim_total();
    const std::size_t de = a.layout.dim_e();
    const std::size_t ds = a.layout.dim_s();
    std::vector<oracle::Mat> gens{drift_generator(spec).matrix()};
    const auto ctrl = oracle::control_set(de, ds);
    gens.insert(gens.end(), ctrl.begin(), ctrl.end());
    const auto L = oracle::closure(gens, d);
    const auto Lc = oracle::ideal(L, ctrl);
    const std::size_t ld = oracle::commutant_dim(Lc.elements(), d);
    std::ostringstream os;
    os << "N=" << n << " ranks L/L_c/L_d " << a.triple.L.rank() << "/" << a.triple.L_c.rank() << "/"
       << a.triple.L_d.rank() << " oracle " << L.rank() << "/" << Lc.rank() << "/" << ld;
    v.require(L.rank() == a.triple.L.rank() && Lc.rank() == a.triple.L_c.rank() &&
                  ld == a.triple.L_d.rank(),
              os.str());
  }
}

// 3
void xx_prime_expansion(Verdict& v) {
  const Analysis a = run_spec(xx_prime());
  const ExpansionReport e = ancilla_expand(a, 2);
  remember("xx_prime+ancilla", e.expanded);
  v.require(e.expanded.classification.blocks.size() == 2, "expected two blocks");
  v.require(e.block_map.size() == 1 && e.block_map[0].split_expected &&
                e.block_map[0].images.size() == 2 && e.block_map[0].ok,
            "projectors are not the Z* splits");
  v.require(e.block_map.empty() || e.block_map[0].projector_residual <= 1e-8, "projector residual");
  std::size_t su_sum = 0;
  for (const auto& b : e.expanded.classification.blocks) {
    const std::size_t d = b.type.block_dim() * e.expanded.layout.dim_s();
    su_sum += d * d - 1;
  }
  v.require(e.expanded.triple.L_c.rank() == su_sum, "L_c' is not a sum of full su blocks");
  v.require(e.expanded.structure.pass && e.expanded.structure.lc_residual <= 1e-8,
            "expanded L_c form");
  v.require(e.ld_residual <= 1e-8, "L_d' vs L_d (x) Id");
  v.require(e.pass, "expansion: " + e.failure);
}

// 4
void xx_chain_expansion(Verdict& v) {
  const Analysis a = run_spec(xx_chain(3, {1.0, 1.0}, {0.0, 0.0, 0.0}, 0.0));
  const ExpansionReport e = ancilla_expand(a, 2);
  remember("xx_chain3+ancilla", e.expanded);
  v.require(e.expanded.classification.blocks.size() == 1, "expected one block");
  const std::size_t d = e.expanded.layout.dim_total();
  std::ostringstream os;
  os << "rank L_c' " << e.expanded.triple.L_c.rank() << " vs " << d * d - 1;
  v.require(e.expanded.triple.L_c.rank() == d * d - 1, os.str());
  v.require(e.pass, "expansion: " + e.failure);
}

// Drift families on E (x) S; E dims are the internal factor dims.
Operator structured_drift(const SpaceLayout& lay, std::mt19937_64& rng) {
  // h_B (x) Id + Id_B (x) h_RS with B the first E factor
  const std::size_t db = lay.e_dims()[0];
  const std::size_t drs = lay.dim_total() / db;
  const Mat h = kron(oracle::random_hermitian(db, rng), eye(drs)) +
                kron(eye(db), oracle::random_hermitian(drs, rng));
  return Operator(lay, kI * h);
}

Operator dense_drift(const SpaceLayout& lay, std::mt19937_64& rng) {
  return Operator(lay, kI * oracle::random_hermitian(lay.dim_total(), rng));
}

Operator block_diagonal_drift(const SpaceLayout& lay, std::mt19937_64& rng) {
  // sum_k P_k (x) h_k over computational states of E
  const std::size_t de = lay.dim_e();
  const std::size_t ds = lay.dim_s();
  Mat h = Mat::Zero(static_cast<Eigen::Index>(de * ds), static_cast<Eigen::Index>(de * ds));
  for (std::size_t k = 0; k < de; ++k) h += kron(ket_bra(de, k, k), oracle::random_hermitian(ds, rng));
  return Operator(lay, kI * h);
}

// physical sites: S = site 0, E = the rest (internal order reverses them)
Operator pauli_drift(const SpaceLayout& lay, std::uint64_t seed) {
  std::vector<std::size_t> sites{lay.dim_s()};
  const auto e = lay.e_dims();
  for (auto it = e.rbegin(); it != e.rend(); ++it) sites.push_back(*it);
  const HamiltonianSpec spec = random_drift(sites, {0}, seed, 2);
  return drift_generator(spec);
}

Operator family_drift(const SpaceLayout& lay, std::size_t seed, std::size_t family,
                      std::mt19937_64& rng) {
  switch (family % 3) {
    case 0: return structured_drift(lay, rng);
    case 1: return pauli_drift(lay, seed);
    default: return dense_drift(lay, rng);
  }
}

// 5
void theorem1_suite(Verdict& v) {
  const std::vector<SpaceLayout> layouts{SpaceLayout::bipartite({2, 2}, {2}),
                                         SpaceLayout::bipartite({2, 2}, {3}),
                                         SpaceLayout::bipartite({4}, {2})};
  std::size_t count = 0;
  for (const auto& lay : layouts) {
    for (std::size_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(1000 + seed);
      const Operator drift = family_drift(lay, seed, seed, rng);
      const Analysis& a =
          remember(lay.to_string() + " seed " + std::to_string(seed), analyze({drift}, lay));
      const Theorem1Report& t = a.theorem1;
      std::ostringstream os;
      os << lay.to_string() << " seed " << seed << ": inclusion " << t.inclusion_residual
         << " cap " << t.cap_rank << " split " << t.split_residual;
      v.require(t.pass && t.inclusion_residual <= 1e-8 && t.cap_rank == 0 &&
                    t.split_residual <= 1e-8 && t.split_rank_match,
                os.str());
      ++count;
    }
  }
  v.require(count == 60, "case count");
}

// 6
void regime3_suite(Verdict& v) {
  std::vector<std::pair<SpaceLayout, std::size_t>> cases;  // layout, family
  for (std::size_t s = 0; s < 20; ++s) {
    SpaceLayout lay = s % 5 == 4 ? SpaceLayout::bipartite({2, 2}, {3})
                                 : (s % 2 ? SpaceLayout::bipartite({3}, {3})
                                          : SpaceLayout::bipartite({2}, {3}));
    cases.emplace_back(lay, s % 4);
  }
  for (std::size_t s = 0; s < cases.size(); ++s) {
    const auto& [lay, family] = cases[s];
    std::mt19937_64 rng(5000 + s);
    Operator drift;
    switch (family) {
      case 0: drift = dense_drift(lay, rng); break;
      case 1: drift = block_diagonal_drift(lay, rng); break;
      case 2: drift = lay.e_dims().size() > 1 ? structured_drift(lay, rng) : pauli_drift(lay, s); break;
      default: drift = pauli_drift(lay, s); break;
    }
    const std::string name = lay.to_string() + " family " + std::to_string(family) + " seed " +
                             std::to_string(s);
    const Analysis a = analyze({drift}, lay);
    remember(name, a);
    for (const auto& b : a.classification.blocks) {
      v.require(allowed_in_regime3(b.type), name + ": type " + sig(b.type));
    }
    v.require(a.structure.pass, name + ": " + a.structure.failure);
    const ExpansionReport e = ancilla_expand(a, 2);
    remember(name + "+ancilla", e.expanded);
    std::ostringstream os;
    os << name << ": survived " << e.survived_rank << " vs " << e.original_rank << " residual "
       << e.survived_residual;
    v.require(e.survived_match && e.survived_residual <= 1e-8, os.str());
  }
}

Mat conjugate(const Mat& u, const Mat& m) { return u * m * u.adjoint(); }

OperatorSpace conjugated(const OperatorSpace& s, const Mat& u) {
  const SpaceLayout lay = SpaceLayout::plain({static_cast<std::size_t>(u.rows())});
  OperatorSpace out(lay, s.hermiticity());
  for (const auto& b : s.basis()) out.insert(Operator(lay, conjugate(u, b.matrix())));
  return out;
}

std::vector<oracle::Mat> mats(const OperatorSpace& s) {
  std::vector<oracle::Mat> out;
  for (const auto& b : s.basis()) out.push_back(b.matrix());
  return out;
}

// 7
void jordan_suite(Verdict& v) {
  std::vector<JordanType> types{JordanType::real(1), JordanType::real(3),
                                JordanType::matrix(3, 1, 1), JordanType::matrix(3, 2, 1, 1, 0),
                                JordanType::matrix(3, 4, 1)};
  for (std::size_t a : {1u, 2u}) {
    types.push_back(JordanType::spin(3, a));
    types.push_back(JordanType::spin(5, a));
    for (std::size_t n : {4u, 6u}) {
      types.push_back(JordanType::spin(n, a, a, 0));
      if (a == 2) types.push_back(JordanType::spin(n, a, 1, 1));
    }
  }
  types.push_back(JordanType::matrix(3, 1, 2));
  types.push_back(JordanType::matrix(3, 2, 2, 1, 1));
  types.push_back(JordanType::matrix(3, 2, 2, 2, 0));
  types.push_back(JordanType::matrix(3, 4, 2));

  std::uint64_t seed = 77;
  for (const auto& t : types) {
    const CompanionSets cs = companion_sets(t);
    const std::size_t d = t.block_dim();
    const Mat u = oracle::random_unitary(d, seed++);
    const OperatorSpace J = conjugated(cs.J, u);
    const OperatorSpace Jbar = conjugated(cs.Jbar, u);
    const OperatorSpace Jhat = conjugated(cs.Jhat, u);
    const std::string name = sig(t);
    try {
      const JordanFrame f = build_frame(J);
      v.require(frame_residuals(f).max() <= 1e-8, name + ": frame residual");
      const Classification c = classify(f, J);
      v.require(c.blocks.size() == 1, name + ": block count");
      if (c.blocks.size() == 1) {
        v.require(descriptor(c.blocks[0].type) == descriptor(t),
                  name + ": classified as " + sig(c.blocks[0].type));
        const CanonicalIsometry iso = canonical_isometry(f, c.blocks[0], J);
        v.require(iso.residual <= 1e-8, name + ": canonical isometry");
      }
    } catch (const std::exception& e) {
      v.fail(name + ": " + e.what());
    }
    const CompanionReport rel = verify_companion_relations(J, Jbar, Jhat);
    for (const auto& chk : rel.checks) v.require(chk.holds, name + ": " + chk.name);
    // null-space oracles
    const auto jm = mats(J);
    std::vector<oracle::Mat> skew;
    for (const auto& m : jm) skew.push_back(kI * m);
    v.require(oracle::commutant_dim(skew, d) == Jhat.rank(), name + ": commutant dim");
    v.require(oracle::pseudo_ideal_dim(jm, d) == sum(Jhat, Jbar).rank(),
              name + ": pseudo-ideal dim");
  }
}

// 8
void relation_suite(Verdict& v) {
  bool violated_ds2 = false;
  for (const auto& s : g_seen) {
    for (const auto& c : s.relations.checks) {
      const bool g1_closed = c.name == "[G1,G1] in G1";
      if (!g1_closed || s.dim_s >= 3) {
        std::ostringstream os;
        os << s.name << ": " << c.name << " residual " << c.residual;
        v.require(c.holds, os.str());
      } else if (!c.holds) {
        violated_ds2 = true;
      }
    }
  }
  v.require(!g_seen.empty(), "no systems analyzed");
  v.require(violated_ds2, "no dim_S = 2 system violates [G1,G1] in G1");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"1 xx_prime: single S4 block, dim_A 2, Z* (+1,-1)", xx_prime_block},
      {"2 xx chain N=2,3: S_(2N-1) block, ranks match brute-force oracle", xx_chain_ranks},
      {"3 xx_prime + ancilla: Z* split into two full-su blocks, L_d' = L_d (x) Id", xx_prime_expansion},
      {"4 xx chain N=3 + ancilla: single block, L_c' = su(16)", xx_chain_expansion},
      {"5 L = (L_d cap L) + L_c, L_d cap L_c = 0 on 60 seeded drifts", theorem1_suite},
      {"6 dim_S = 3: regime-3 types and surviving generators", regime3_suite},
      {"7 canonical Jordan types under random unitaries", jordan_suite},
      {"8 identifier relations over every analyzed system", relation_suite},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  (%.1fs)%s%s\n", v.ok ? "PASS" : "FAIL", name.c_str(), secs,
                v.ok ? "" : "  ", v.ok ? "" : v.why.str().c_str());
    std::fflush(stdout);
    if (!v.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
