#pragma once

#include <complex>

#include <Eigen/Dense>

#include "dla/layout.hpp"

namespace dla {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Dense complex square matrix tagged with its tensor layout.
class Operator {
 public:
  Operator() = default;
  Operator(SpaceLayout layout, Mat matrix);

  static Operator identity(const SpaceLayout& layout);
  static Operator zero(const SpaceLayout& layout);

  const SpaceLayout& layout() const { return layout_; }
  const Mat& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  bool is_hermitian(double tol) const;
  bool is_skew_hermitian(double tol) const;
  /// Hilbert-Schmidt norm, normalized so that the identity has norm 1.
  double hs_norm() const;
  cplx trace() const { return matrix_.trace(); }

  Operator adjoint() const { return {layout_, matrix_.adjoint()}; }
  Operator with_matrix(Mat m) const { return {layout_, std::move(m)}; }

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s) {
    matrix_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= cplx(s, 0.0); }
  friend Operator operator*(double s, Operator a) { return a *= cplx(s, 0.0); }
  /// Matrix product.
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  SpaceLayout layout_;
  Mat matrix_;
};

/// Kronecker product; the layout follows dla::concat.
Operator tensor(const Operator& a, const Operator& b);
Mat kron(const Mat& a, const Mat& b);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Tr(a^dagger b) / dim. The imaginary part is dropped when both arguments are
/// Hermitian or both are skew-Hermitian.
cplx hs_inner(const Operator& a, const Operator& b);

/// a (x) b on a bipartite layout with `e_op` on H_E and `s_op` on H_S.
Operator embed(const Mat& e_op, const Mat& s_op, const SpaceLayout& layout);

/// Tr_S of an operator on a bipartite layout, as a matrix on H_E.
Mat partial_trace_s(const Mat& m, std::size_t dim_e, std::size_t dim_s);
/// Tr_S[m (Id_E (x) w)] for an operator w on H_S.
Mat partial_trace_s_weighted(const Mat& m, const Mat& w, std::size_t dim_e);

double frobenius_residual(const Mat& a, const Mat& b);

}  // namespace dla
