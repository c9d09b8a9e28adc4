#include "dla/identifiers.hpp"

#include <stdexcept>

#include "dla/pauli.hpp"

namespace dla {

IdentifierPair extract_identifiers(const OperatorSpace& L, double tau_rank) {
  const SpaceLayout& layout = L.layout();
  if (!layout.is_bipartite()) throw std::invalid_argument("extract_identifiers: no S factors");
  if (!is_subspace(control_block(layout, tau_rank), L, 1e-7)) {
    throw std::invalid_argument("extract_identifiers: L does not contain Id_E (x) su(dim_S)");
  }
  const std::size_t de = layout.dim_e();
  const std::size_t ds = layout.dim_s();
  const SpaceLayout el = layout.e_layout();
  IdentifierPair p;
  p.dim_s = ds;
  p.G0 = OperatorSpace(el, Hermiticity::SkewHermitian, tau_rank);
  p.G1 = OperatorSpace(el, Hermiticity::SkewHermitian, tau_rank);

  // Hermitian orthonormal basis of i*su(dim_S): Tr(W_k W_l)/dim_S = delta_kl
  std::vector<Mat> ws;
  const OperatorSpace su = su_basis(ds, tau_rank);
  for (const auto& b : su.basis()) ws.push_back(-kI * b.matrix());

  const double inv = 1.0 / static_cast<double>(ds);
  for (const auto& g : L.basis()) {
    p.G0.insert_coords(pack(partial_trace_s(g.matrix(), de, ds) * inv, Hermiticity::SkewHermitian));
  }
  for (const auto& g : L.basis()) {
    for (const auto& w : ws) {
      p.G1.insert_coords(
          pack(partial_trace_s_weighted(g.matrix(), w, de) * inv, Hermiticity::SkewHermitian));
    }
  }
  return p;
}

OperatorSpace reconstruct(const IdentifierPair& pair, const SpaceLayout& layout,
                          double tau_rank) {
  OperatorSpace out(layout, Hermiticity::SkewHermitian, tau_rank);
  const std::size_t ds = layout.dim_s();
  const Mat id_s = Mat::Identity(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(ds));
  for (const auto& g : pair.G0.basis()) out.insert(embed(g.matrix(), id_s, layout));
  const auto su = su_basis(ds, tau_rank);
  for (const auto& g : pair.G1.basis()) {
    const Mat h = kI * g.matrix();
    for (const auto& w : su.basis()) out.insert(embed(h, w.matrix(), layout));
  }
  return out;
}

const RelationCheck* RelationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

template <typename F>
RelationCheck run_check(std::string name, const OperatorSpace& a, const OperatorSpace& b,
                        const OperatorSpace& target, F&& op, double tau, bool required) {
  RelationCheck c;
  c.name = std::move(name);
  c.required = required;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const double res = target.residual(op(a[i], b[j]));
      if (res > c.residual) {
        c.residual = res;
        c.worst_i = i;
        c.worst_j = j;
      }
    }
  }
  c.holds = c.residual <= tau;
  return c;
}

}  // namespace

RelationReport check_identifier_relations(const IdentifierPair& pair, double tau) {
  RelationReport r;
  auto comm = [](const Operator& x, const Operator& y) { return commutator(x, y); };
  auto ianti = [](const Operator& x, const Operator& y) { return kI * anticommutator(x, y); };
  r.checks.push_back(run_check("[G0,G0] in G0", pair.G0, pair.G0, pair.G0, comm, tau, true));
  r.checks.push_back(run_check("[G1,G1] in G0", pair.G1, pair.G1, pair.G0, comm, tau, true));
  r.checks.push_back(run_check("[G0,G1] in G1", pair.G0, pair.G1, pair.G1, comm, tau, true));
  r.checks.push_back(run_check("i{G1,G1} in G1", pair.G1, pair.G1, pair.G1, ianti, tau, true));
  r.checks.push_back(
      run_check("[G1,G1] in G1", pair.G1, pair.G1, pair.G1, comm, tau, pair.dim_s >= 3));
  r.pass = true;
  for (const auto& c : r.checks) {
    if (c.required && !c.holds) r.pass = false;
  }
  return r;
}

}  // namespace dla
