#include "dla/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace dla {

namespace {

void check_pair(std::size_t d, std::size_t k, std::size_t q) {
  if (k >= d || q >= d || k == q) {
    throw std::invalid_argument("generalized Pauli index pair out of range");
  }
}

}  // namespace

Mat ket_bra(std::size_t d, std::size_t k, std::size_t q) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) = 1.0;
  return m;
}

Mat pauli_x(std::size_t d, std::size_t k, std::size_t q) {
  check_pair(d, k, q);
  return ket_bra(d, k, q) + ket_bra(d, q, k);
}

Mat pauli_y(std::size_t d, std::size_t k, std::size_t q) {
  check_pair(d, k, q);
  return -kI * ket_bra(d, k, q) + kI * ket_bra(d, q, k);
}

Mat pauli_z(std::size_t d, std::size_t k, std::size_t q) {
  check_pair(d, k, q);
  return ket_bra(d, k, k) - ket_bra(d, q, q);
}

Mat PauliSymbol::matrix(std::size_t d) const {
  switch (kind) {
    case Kind::I: return eye(d);
    case Kind::X: return pauli_x(d, k, q);
    case Kind::Y: return pauli_y(d, k, q);
    case Kind::Z: return pauli_z(d, k, q);
    case Kind::P:
      if (k >= d) throw std::invalid_argument("projector index out of range");
      return ket_bra(d, k, k);
  }
  return eye(d);
}

std::string PauliSymbol::token() const {
  const bool plain_pair = k == 0 && q == 1;
  auto pair = [&](char c) {
    if (plain_pair) return std::string(1, c);
    return std::string(1, c) + std::to_string(k) + ":" + std::to_string(q);
  };
  switch (kind) {
    case Kind::I: return "I";
    case Kind::X: return pair('X');
    case Kind::Y: return pair('Y');
    case Kind::Z: return pair('Z');
    case Kind::P: return "P" + std::to_string(k);
  }
  return "I";
}

Mat PauliString::matrix(const std::vector<std::size_t>& dims) const {
  if (dims.size() != symbols.size()) {
    throw std::invalid_argument("Pauli string length does not match the number of factors");
  }
  Mat m = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < symbols.size(); ++i) m = kron(m, symbols[i].matrix(dims[i]));
  return coefficient * m;
}

Operator PauliString::to_operator(const SpaceLayout& layout) const {
  return {layout, matrix(layout.factor_dims())};
}

std::string PauliString::to_string() const {
  std::ostringstream os;
  os << coefficient << " [";
  for (std::size_t i = 0; i < symbols.size(); ++i) os << (i ? " " : "") << symbols[i].token();
  os << ']';
  return os.str();
}

std::vector<Mat> hermitian_traceless_basis(std::size_t d) {
  if (d < 2) throw std::invalid_argument("su(d) needs d >= 2");
  std::vector<Mat> out;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t q = k + 1; q < d; ++q) out.push_back(pauli_x(d, k, q));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t q = k + 1; q < d; ++q) out.push_back(pauli_y(d, k, q));
  for (std::size_t k = 0; k + 1 < d; ++k) out.push_back(pauli_z(d, k, k + 1));
  return out;
}

OperatorSpace su_basis(std::size_t d, double tau_rank) {
  const auto layout = SpaceLayout::plain({d});
  OperatorSpace s(layout, Hermiticity::SkewHermitian, tau_rank);
  for (const auto& h : hermitian_traceless_basis(d)) s.insert(Operator(layout, kI * h));
  return s;
}

OperatorSpace control_block(const SpaceLayout& layout, double tau_rank) {
  if (!layout.is_bipartite()) throw std::invalid_argument("control block needs H_S factors");
  const auto su = su_basis(layout.dim_s(), tau_rank);
  OperatorSpace s(layout, Hermiticity::SkewHermitian, tau_rank);
  const Mat id_e = eye(layout.dim_e());
  for (const auto& w : su.basis()) s.insert(embed(id_e, w.matrix(), layout));
  return s;
}

std::vector<Operator> control_generators(const SpaceLayout& layout) {
  if (!layout.is_bipartite()) throw std::invalid_argument("control generators need H_S factors");
  const std::size_t ds = layout.dim_s();
  const Mat id_e = eye(layout.dim_e());
  std::vector<Operator> out;
  for (std::size_t k = 0; k + 1 < ds; ++k) {
    out.push_back(embed(id_e, kI * pauli_x(ds, k, k + 1), layout));
    out.push_back(embed(id_e, kI * pauli_y(ds, k, k + 1), layout));
  }
  return out;
}

OperatorSpace full_unitary_algebra(const SpaceLayout& layout, bool with_trace, double tau_rank) {
  const std::size_t d = layout.dim_total();
  OperatorSpace s(layout, Hermiticity::SkewHermitian, tau_rank);
  if (with_trace) s.insert(Operator(layout, kI * eye(d)));
  if (d < 2) return s;
  for (const auto& h : hermitian_traceless_basis(d)) s.insert(Operator(layout, kI * h));
  return s;
}

}  // namespace dla
