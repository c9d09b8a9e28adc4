#pragma once

#include <string>
#include <vector>

#include "dla/operator_space.hpp"

namespace dla {

// Generalized Pauli matrices on a d-level factor:
//   X_{k,q} = |k><q| + |q><k|,  Y_{k,q} = -i|k><q| + i|q><k|,  Z_{k,q} = |k><k| - |q><q|.
Mat pauli_x(std::size_t d, std::size_t k, std::size_t q);
Mat pauli_y(std::size_t d, std::size_t k, std::size_t q);
Mat pauli_z(std::size_t d, std::size_t k, std::size_t q);
Mat ket_bra(std::size_t d, std::size_t k, std::size_t q);
inline Mat pauli_x() { return pauli_x(2, 0, 1); }
inline Mat pauli_y() { return pauli_y(2, 0, 1); }
inline Mat pauli_z() { return pauli_z(2, 0, 1); }
inline Mat eye(std::size_t d) {
  return Mat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

/// One tensor factor of a Pauli string.
struct PauliSymbol {
  enum class Kind { I, X, Y, Z, P };  // P = |k><k|
  Kind kind = Kind::I;
  std::size_t k = 0;
  std::size_t q = 1;

  static PauliSymbol id() { return {}; }
  static PauliSymbol x(std::size_t k = 0, std::size_t q = 1) { return {Kind::X, k, q}; }
  static PauliSymbol y(std::size_t k = 0, std::size_t q = 1) { return {Kind::Y, k, q}; }
  static PauliSymbol z(std::size_t k = 0, std::size_t q = 1) { return {Kind::Z, k, q}; }
  static PauliSymbol proj(std::size_t k) { return {Kind::P, k, k}; }

  Mat matrix(std::size_t d) const;
  /// Token form: I, X, Y, Z for the (0,1) pair; Xk:q, Yk:q, Zk:q, Pk otherwise.
  std::string token() const;
  bool operator==(const PauliSymbol&) const = default;
};

/// Tensor product of per-factor symbols with a complex coefficient.
struct PauliString {
  std::vector<PauliSymbol> symbols;
  cplx coefficient{1.0, 0.0};

  Mat matrix(const std::vector<std::size_t>& dims) const;
  Operator to_operator(const SpaceLayout& layout) const;
  std::string to_string() const;
  bool operator==(const PauliString&) const = default;
};

/// Hermitian generalized Pauli basis of one d-level factor, in the order
/// X_{k,q}, Y_{k,q} (k<q, row-major), Z_{k,k+1}. Size d^2-1.
std::vector<Mat> hermitian_traceless_basis(std::size_t d);

/// Orthonormal basis of su(d): i times the generalized Pauli operators,
/// Gram-Schmidt orthonormalized in the order above.
OperatorSpace su_basis(std::size_t d, double tau_rank = 1e-9);

/// su(d) embedded on a plain or bipartite layout's S part as Id_E (x) su(dim_S).
OperatorSpace control_block(const SpaceLayout& layout, double tau_rank = 1e-9);

/// Id_E (x) i{X_(k,k+1), Y_(k,k+1)}: a Lie generating set of the control block.
std::vector<Operator> control_generators(const SpaceLayout& layout);

/// Real span of all skew-Hermitian operators: u(d) (with_trace) or su(d).
OperatorSpace full_unitary_algebra(const SpaceLayout& layout, bool with_trace,
                                   double tau_rank = 1e-9);

}  // namespace dla
