#include "dla/lie.hpp"

#include <stdexcept>

#include "dla/linalg.hpp"
#include "dla/pauli.hpp"

namespace dla {

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

// Closes `space` under ad_g for every g in `ad`, starting from the elements
// at index >= `first_new`. Returns the per-sweep rank log.
std::vector<std::size_t> ad_close(OperatorSpace& space, const std::vector<Mat>& ad,
                                  std::size_t first_new, std::size_t max_sweeps,
                                  std::size_t rank_cap, bool& saturated,
                                  std::size_t& sweeps) {
  std::vector<std::size_t> log;
  std::size_t begin = first_new;
  sweeps = 0;
  saturated = false;
  while (true) {
    const std::size_t end = space.rank();
    if (begin == end || space.rank() >= rank_cap) {
      saturated = true;
      break;
    }
    if (sweeps >= max_sweeps) break;
    for (std::size_t i = begin; i < end && space.rank() < rank_cap; ++i) {
      // copy: insertion may reallocate the basis vector
      const Mat x = space[i].matrix();
      for (const auto& g : ad) {
        space.insert_coords(pack(comm(x, g), Hermiticity::SkewHermitian));
        if (space.rank() >= rank_cap) break;
      }
    }
    begin = end;
    ++sweeps;
    log.push_back(space.rank());
  }
  return log;
}

bool all_traceless(const std::vector<Mat>& ms) {
  for (const auto& m : ms) {
    if (std::abs(m.trace()) > 1e-12 * std::max(1.0, m.norm())) return false;
  }
  return true;
}

}  // namespace

ClosureResult close_lie(const std::vector<Operator>& generators, const SpaceLayout& layout,
                        double tau_rank, std::size_t max_iter) {
  const std::size_t d = layout.dim_total();
  if (max_iter == 0) max_iter = d * d;
  ClosureResult out;
  out.algebra = OperatorSpace(layout, Hermiticity::SkewHermitian, tau_rank);
  std::vector<Mat> gens;
  for (const auto& g : generators) {
    if (!(g.layout() == layout)) throw std::invalid_argument("close_lie: generator layout mismatch");
    if (!g.is_skew_hermitian(1e-10)) {
      throw std::invalid_argument("close_lie: generator is not skew-Hermitian");
    }
    if (out.algebra.insert(g)) gens.push_back(g.matrix());
  }
  out.rank_log.push_back(out.algebra.rank());
  // traceless generators cannot leave su(d); a trace part adds only i*Id
  const std::size_t cap = all_traceless(gens) ? d * d - 1 : d * d;
  auto log = ad_close(out.algebra, gens, 0, max_iter, cap, out.saturated, out.iterations);
  out.rank_log.insert(out.rank_log.end(), log.begin(), log.end());
  return out;
}

OperatorSpace connected_algebra(const OperatorSpace& L, const OperatorSpace& seed,
                                double tau_rank, const std::vector<Operator>& ad_set) {
  if (!is_subspace(seed, L, 1e-7)) {
    throw std::invalid_argument("connected_algebra: control block is not contained in L");
  }
  OperatorSpace lc(L.layout(), Hermiticity::SkewHermitian, tau_rank);
  for (const auto& s : seed.basis()) lc.insert(s);
  std::vector<Mat> ad;
  for (const auto& g : (ad_set.empty() ? L.basis() : ad_set)) ad.push_back(g.matrix());
  bool saturated = false;
  std::size_t sweeps = 0;
  const std::size_t d = L.dim();
  ad_close(lc, ad, 0, d * d, L.rank(), saturated, sweeps);
  return lc;
}

OperatorSpace commutant(const OperatorSpace& target, double tau_rank, bool* fragile) {
  OperatorSpace out(target.layout(), Hermiticity::SkewHermitian, tau_rank);
  const std::size_t d = target.dim();
  if (target.empty()) return full_unitary_algebra(target.layout(), true, tau_rank);
  std::vector<Mat> ops;
  for (const auto& b : target.basis()) ops.push_back(b.matrix());
  auto cb = commutant_basis(ops, tau_rank);
  if (fragile) *fragile = *fragile || cb.fragile;
  // the commutant of a *-closed set is *-closed: split each element into
  // its skew and i*Hermitian parts
  for (const auto& x : cb.basis) {
    Mat skew = 0.5 * (x - x.adjoint());
    Mat iherm = 0.5 * kI * (x + x.adjoint());
    out.insert(Operator(target.layout(), skew));
    out.insert(Operator(target.layout(), iherm));
    if (out.rank() == d * d) break;
  }
  return out;
}

AlgebraTriple assemble_triple(const OperatorSpace& L, const OperatorSpace& control,
                              double tau_rank, const std::vector<Operator>& ad_set) {
  AlgebraTriple t;
  t.L = L;
  t.L_c = connected_algebra(L, control, tau_rank, ad_set);
  bool fragile = false;
  t.L_d = commutant(t.L_c, tau_rank, &fragile);
  t.L_d_cap_L = intersect(t.L_d, L, tau_rank, &fragile);
  // traceless convention: drop the i*Id direction of L_d before intersecting
  const Operator iid(L.layout(), kI * Mat::Identity(static_cast<Eigen::Index>(L.dim()),
                                                    static_cast<Eigen::Index>(L.dim())));
  OperatorSpace ld_traceless(L.layout(), Hermiticity::SkewHermitian, tau_rank);
  for (const auto& x : t.L_d.basis()) {
    const cplx tr = x.trace() / static_cast<double>(L.dim());
    ld_traceless.insert(x - iid * (tr / kI));
  }
  t.L_d_cap_L_traceless = intersect(ld_traceless, L, tau_rank, &fragile);
  t.fragile = fragile;
  return t;
}

Theorem1Report verify_theorem1(const AlgebraTriple& t, double tau) {
  Theorem1Report r;
  const OperatorSpace dc = sum(t.L_d, t.L_c);
  for (std::size_t i = 0; i < t.L.rank(); ++i) {
    const double res = dc.residual(t.L[i]);
    if (res > r.inclusion_residual) {
      r.inclusion_residual = res;
      if (res > tau) r.violating_element = i;
    }
  }
  bool fragile = false;
  r.cap_rank = intersect(t.L_d, t.L_c, t.L.tolerance().tau_rank, &fragile).rank();
  const OperatorSpace split = sum(t.L_d_cap_L, t.L_c);
  r.split_residual = mutual_residual(t.L, split);
  r.split_rank_match = split.rank() == t.L.rank();
  r.pass = r.inclusion_residual <= tau && r.cap_rank == 0 && r.split_residual <= tau &&
           r.split_rank_match;
  if (r.inclusion_residual > tau) {
    r.failure = "L not inside span(L_d u L_c)";
  } else if (r.cap_rank != 0) {
    r.failure = "L_d and L_c intersect";
  } else if (!r.pass) {
    r.failure = "L differs from span((L_d cap L) u L_c)";
  }
  return r;
}

BracketCheck bracket_residual(const OperatorSpace& a, const OperatorSpace& b,
                              const OperatorSpace& space) {
  BracketCheck r;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const double res = space.residual(commutator(a[i], b[j]));
      if (res > r.max_residual) r = {res, i, j};
    }
  }
  return r;
}

}  // namespace dla
