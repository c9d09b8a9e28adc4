#include "dla/structure.hpp"

#include <algorithm>
#include <cmath>

#include "dla/linalg.hpp"
#include "dla/pauli.hpp"

namespace dla {

namespace {

std::size_t r_dim(const JordanType& t) {
  switch (t.tag) {
    case JordanTag::R: return 1;
    case JordanTag::S: return 2;
    case JordanTag::M: return t.gamma;
  }
  return 1;
}

double span_gap(const OperatorSpace& a, const OperatorSpace& b) {
  double r = mutual_residual(a, b);
  if (a.rank() != b.rank()) r = std::max(r, 1.0);
  return r;
}

// L_d and L_c contributions of one block whose canonical coordinates are
// reached by the isometry u (block_dim x dim_E).
void add_block_algebras(const JordanType& t, const Mat& u, const SpaceLayout& layout,
                        int regime, OperatorSpace& ld, OperatorSpace& lc, double tau) {
  const std::size_t ds = layout.dim_s();
  const Mat id_s = eye(ds);
  const Mat ud = u.adjoint();
  auto pull = [&](const Mat& x) -> Mat { return ud * x * u; };
  const CompanionSets cs = companion_sets(t, tau);
  for (const auto& h : cs.Jhat.basis()) ld.insert(embed(kI * pull(h.matrix()), id_s, layout));
  if (regime == 2) {
    for (const auto& b : cs.Jbar.basis()) lc.insert(embed(kI * pull(b.matrix()), id_s, layout));
    const auto su = su_basis(ds, tau);
    for (const auto& j : cs.J.basis()) {
      const Mat pj = pull(j.matrix());
      for (const auto& w : su.basis()) lc.insert(embed(pj, w.matrix(), layout));
    }
  } else {
    const std::size_t rs = r_dim(t) * ds;
    const Mat uS = kron(u, id_s);
    const Mat udS = uS.adjoint();
    const Mat id_b = eye(t.dim_a);
    for (const auto& h : hermitian_traceless_basis(rs)) {
      lc.insert(Operator(layout, udS * kron(id_b, kI * h) * uS));
    }
  }
}

}  // namespace

bool allowed_in_regime3(const JordanType& t) {
  switch (t.tag) {
    case JordanTag::R: return true;
    case JordanTag::M: return t.k == 2 && (t.zstar_plus == 0 || t.zstar_minus == 0);
    case JordanTag::S: return t.n == 4 && (t.zstar_plus == 0 || t.zstar_minus == 0);
  }
  return false;
}

StructureReport decompose(const Classification& cls, const JordanFrame& frame,
                          const OperatorSpace& J, const AlgebraTriple& triple,
                          const SpaceLayout& layout, const Tolerances& tol) {
  StructureReport r;
  r.dim_s = layout.dim_s();
  r.regime = r.dim_s >= 3 ? 3 : 2;
  r.L_d_expected = OperatorSpace(layout, Hermiticity::SkewHermitian, tol.tau_rank);
  r.L_c_expected = OperatorSpace(layout, Hermiticity::SkewHermitian, tol.tau_rank);
  std::size_t total = 0;
  for (const auto& b : cls.blocks) {
    BlockStructure bs;
    bs.block = b;
    bs.dim = b.type.block_dim();
    total += bs.dim;
    if (r.regime == 3) {
      if (!allowed_in_regime3(b.type)) r.regime_types_ok = false;
      bs.dim_b = b.type.dim_a;
      bs.dim_r = r_dim(b.type);
    }
    bs.iso = canonical_isometry(frame, b, J, tol.jordan());
    r.isometry_residual = std::max(r.isometry_residual, bs.iso.residual);
    add_block_algebras(bs.iso.type, bs.iso.U, layout, r.regime, r.L_d_expected, r.L_c_expected,
                       tol.tau_rank);
    r.blocks.push_back(std::move(bs));
  }
  r.ld_residual = span_gap(r.L_d_expected, triple.L_d);
  r.lc_residual = span_gap(r.L_c_expected, triple.L_c);
  if (total != layout.dim_e()) {
    r.failure = "block dimensions do not add up to dim_E";
  } else if (!r.regime_types_ok) {
    r.failure = "block type not allowed for dim_S >= 3";
  } else if (r.isometry_residual > tol.tau_frame) {
    r.failure = "canonical isometry residual above tau_frame";
  } else if (r.ld_residual > tol.tau_check) {
    r.failure = "computed L_d differs from the assembled form";
  } else if (r.lc_residual > tol.tau_check) {
    r.failure = "computed L_c differs from the assembled form";
  }
  r.pass = r.failure.empty();
  return r;
}

Analysis analyze(const std::vector<Operator>& drifts, const SpaceLayout& layout,
                 const Tolerances& tol, Stage stop) {
  Analysis a;
  a.layout = layout;
  a.drifts = drifts;
  if (!layout.is_bipartite() || layout.dim_s() < 2) {
    throw StageError("input", "layout needs an S part of dimension >= 2");
  }
  for (const auto& d : drifts) {
    if (!(d.layout() == layout)) throw StageError("input", "drift layout mismatch");
    const double scale = std::max(1.0, d.matrix().norm());
    if (!d.is_skew_hermitian(std::max(tol.tau_herm * scale, 1e-10 * scale))) {
      throw StageError("input", "drift generator is not skew-Hermitian");
    }
  }
  const OperatorSpace control = control_block(layout, tol.tau_rank);
  // drift plus a generating set of the control block: same algebra, fewer brackets
  a.generators = drifts;
  for (auto& c : control_generators(layout)) a.generators.push_back(std::move(c));

  try {
    a.closure = close_lie(a.generators, layout, tol.tau_rank);
  } catch (const std::exception& e) {
    throw StageError("closure", e.what());
  }
  if (!a.closure.saturated) throw StageError("closure", "max_iter reached before saturation");
  a.triple = assemble_triple(a.closure.algebra, control, tol.tau_rank, a.generators);
  a.theorem1 = verify_theorem1(a.triple, tol.tau_check);
  if (a.closure.algebra.tolerance().near_threshold > 0) {
    a.fragile.push_back("closure: rank decision within 10x of tau_rank");
  }
  if (a.triple.fragile) a.fragile.push_back("commutant: singular value within 10x of cutoff");
  if (stop == Stage::Closure) return a;

  try {
    a.identifiers = extract_identifiers(a.closure.algebra, tol.tau_rank);
  } catch (const std::exception& e) {
    throw StageError("identifiers", e.what());
  }
  a.relations = check_identifier_relations(a.identifiers, tol.tau_check);
  a.J = a.identifiers.jordan();
  a.reached = Stage::Identifiers;
  if (stop == Stage::Identifiers) return a;

  try {
    a.frame = build_frame(a.J, tol.jordan());
    a.frame_res = frame_residuals(a.frame);
    a.classification = classify(a.frame, a.J, tol.jordan());
  } catch (const std::exception& e) {
    throw StageError("classify", e.what());
  }
  if (a.frame.ambiguous || a.classification.ambiguous) {
    a.fragile.push_back("jordan: eigenvalue gap near tau_spec");
  }
  a.reached = Stage::Classify;
  if (stop == Stage::Classify) return a;

  try {
    a.structure = decompose(a.classification, a.frame, a.J, a.triple, layout, tol);
  } catch (const std::exception& e) {
    throw StageError("structure", e.what());
  }
  a.reached = Stage::Analyze;
  return a;
}

OperatorSpace bi_closure(const OperatorSpace& j, double tau_rank) {
  OperatorSpace out(j.layout(), Hermiticity::Hermitian, tau_rank);
  for (const auto& b : j.basis()) out.insert(b);
  const std::size_t cap = j.dim() * j.dim();
  std::size_t begin = 0;
  while (begin < out.rank() && out.rank() < cap) {
    const std::size_t end = out.rank();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k <= i && k < out.rank(); ++k) {
        const Mat x = out[i].matrix();
        const Mat y = out[k].matrix();
        out.insert_coords(pack(x * y + y * x, Hermiticity::Hermitian));
        out.insert_coords(pack(kI * (x * y - y * x), Hermiticity::Hermitian));
      }
    }
    begin = end;
  }
  return out;
}

ExpansionReport ancilla_expand(const Analysis& original, std::size_t dim_sprime,
                               const Tolerances& tol) {
  if (dim_sprime < 2) throw StageError("input", "ancilla dimension must be >= 2");
  ExpansionReport r;
  const SpaceLayout& lay = original.layout;
  const SpaceLayout lay2 = lay.with_s_appended({dim_sprime});
  const Mat idp = eye(dim_sprime);
  std::vector<Operator> drifts2;
  for (const auto& d : original.drifts) drifts2.emplace_back(lay2, kron(d.matrix(), idp));
  r.expanded = analyze(drifts2, lay2, tol);
  const Analysis& ex = r.expanded;

  // block correspondence by projector overlap
  const auto& ob = original.classification.blocks;
  const auto& nb = ex.classification.blocks;
  std::vector<int> owner(nb.size(), -1);
  r.overlaps.assign(ob.size(), std::vector<double>(nb.size(), 0.0));
  for (std::size_t j = 0; j < ob.size(); ++j) {
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const double num = (ob[j].projector * nb[k].projector).trace().real();
      const double den = nb[k].projector.trace().real();
      r.overlaps[j][k] = num / den;
      if (r.overlaps[j][k] > 0.5) owner[k] = static_cast<int>(j);
    }
  }
  bool map_ok = std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; });
  for (std::size_t j = 0; j < ob.size(); ++j) {
    BlockMatch m;
    m.original = j;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (owner[k] == static_cast<int>(j)) m.images.push_back(k);
    }
    const JordanType& t = ob[j].type;
    m.split_expected = t.has_zstar() && t.zstar_plus > 0 && t.zstar_minus > 0;
    const Mat& p = ob[j].projector;
    if (!m.split_expected && m.images.size() == 1) {
      m.projector_residual = frobenius_residual(nb[m.images[0]].projector, p);
    } else if (m.split_expected && m.images.size() == 2) {
      const Mat pp = 0.5 * (p + ob[j].zstar_full);
      const Mat pm = 0.5 * (p - ob[j].zstar_full);
      const Mat& a = nb[m.images[0]].projector;
      const Mat& b = nb[m.images[1]].projector;
      m.projector_residual =
          std::min(std::max(frobenius_residual(a, pp), frobenius_residual(b, pm)),
                   std::max(frobenius_residual(a, pm), frobenius_residual(b, pp)));
    } else {
      m.projector_residual = 1.0;
    }
    m.ok = m.projector_residual <= tol.tau_check;
    map_ok = map_ok && m.ok;
    r.block_map.push_back(std::move(m));
  }

  OperatorSpace ld_lift(lay2, Hermiticity::SkewHermitian, tol.tau_rank);
  for (const auto& x : original.triple.L_d.basis()) {
    ld_lift.insert(Operator(lay2, kron(x.matrix(), idp)));
  }
  r.ld_residual = span_gap(ld_lift, ex.triple.L_d);

  // {g : g (x) Id_S' in L'}
  OperatorSpace lifted(lay2, Hermiticity::SkewHermitian, tol.tau_rank);
  const OperatorSpace u_full = full_unitary_algebra(lay, true, tol.tau_rank);
  for (const auto& x : u_full.basis()) {
    lifted.insert(Operator(lay2, kron(x.matrix(), idp)));
  }
  const OperatorSpace inter = intersect(ex.closure.algebra, lifted, tol.tau_rank);
  OperatorSpace survived(lay, Hermiticity::SkewHermitian, tol.tau_rank);
  for (const auto& x : inter.basis()) {
    survived.insert(Operator(
        lay, partial_trace_s(x.matrix(), lay.dim_total(), dim_sprime) / double(dim_sprime)));
  }
  r.survived_rank = survived.rank();
  r.original_rank = original.closure.algebra.rank();
  r.survived_residual = mutual_residual(survived, original.closure.algebra);
  r.survived_match = r.survived_rank == r.original_rank && r.survived_residual <= tol.tau_check;

  r.biclosure_residual = span_gap(bi_closure(original.J, tol.tau_rank), ex.J);

  if (!map_ok) {
    r.failure = "block correspondence failed";
  } else if (r.ld_residual > tol.tau_check) {
    r.failure = "L_d' differs from L_d (x) Id_S'";
  } else if (lay.dim_s() >= 3 && !r.survived_match) {
    r.failure = "surviving generators differ from L";
  } else if (r.biclosure_residual > tol.tau_check) {
    r.failure = "expanded Jordan algebra is not the bi-closure of the original";
  } else if (!ex.structure.pass) {
    r.failure = "expanded structure: " + ex.structure.failure;
  }
  r.pass = r.failure.empty();
  return r;
}

JordanType DeclaredBlock::jordan_type() const {
  if (type) return *type;
  if (dim_r == 1) return JordanType::real(dim_b);
  if (dim_r == 2) return JordanType::spin(4, dim_b, dim_b, 0);
  return JordanType::matrix(dim_r, 2, dim_b, dim_b, 0);
}

std::pair<OperatorSpace, OperatorSpace> declared_algebras(const DeclaredStructure& s,
                                                          const SpaceLayout& layout,
                                                          double tau_rank) {
  std::size_t total = 0;
  for (const auto& b : s.blocks) total += b.dim();
  if (total != layout.dim_e()) {
    throw std::invalid_argument("declared blocks cover " + std::to_string(total) +
                                " dimensions, dim_E is " + std::to_string(layout.dim_e()));
  }
  OperatorSpace ld(layout, Hermiticity::SkewHermitian, tau_rank);
  OperatorSpace lc(layout, Hermiticity::SkewHermitian, tau_rank);
  std::size_t off = 0;
  for (const auto& b : s.blocks) {
    const std::size_t d = b.dim();
    Mat u = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < d; ++i) {
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(off + i)) = 1.0;
    }
    add_block_algebras(b.jordan_type(), u, layout, s.regime, ld, lc, tau_rank);
    off += d;
  }
  return {ld, lc};
}

SufficiencyReport sufficiency_check(const DeclaredStructure& s, const SpaceLayout& layout,
                                    const Tolerances& tol) {
  SufficiencyReport r;
  const auto [ld, lc] = declared_algebras(s, layout, tol.tau_rank);
  const OperatorSpace tilde =
      s.ld_full ? sum(ld, lc) : lc;
  r.rank_tilde = tilde.rank();
  const BracketCheck bc = bracket_residual(tilde, tilde, tilde);
  r.closure_residual = bc.max_residual;
  r.worst_i = bc.worst_i;
  r.worst_j = bc.worst_j;
  r.closed = bc.max_residual <= tol.tau_check;
  if (!r.closed) {
    r.failure = "span(L_d' u L_c) is not closed under commutators";
    return r;
  }
  const OperatorSpace control = control_block(layout, tol.tau_rank);
  const OperatorSpace lc2 = connected_algebra(tilde, control, tol.tau_rank);
  const OperatorSpace ld2 = commutant(lc2, tol.tau_rank);
  r.rank_lc = lc2.rank();
  r.rank_ld = ld2.rank();
  r.lc_residual = span_gap(lc2, lc);
  r.ld_residual = span_gap(ld2, ld);
  if (r.lc_residual > tol.tau_check) {
    r.failure = "connected algebra differs from the declared one";
  } else if (r.ld_residual > tol.tau_check) {
    r.failure = "disconnected algebra differs from the declared one";
  }
  r.pass = r.failure.empty();
  return r;
}

}  // namespace dla
