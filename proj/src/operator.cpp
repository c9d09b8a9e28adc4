#include "dla/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace dla {

namespace {

void require_same_layout(const Operator& a, const Operator& b, const char* what) {
  if (!(a.layout() == b.layout())) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch " +
                                a.layout().to_string() + " vs " + b.layout().to_string());
  }
}

}  // namespace

Operator::Operator(SpaceLayout layout, Mat matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.dim_total());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("operator shape does not match layout " + layout_.to_string());
  }
  if (!matrix_.allFinite()) throw std::invalid_argument("operator has non-finite entries");
}

Operator Operator::identity(const SpaceLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.dim_total());
  return {layout, Mat::Identity(n, n)};
}

Operator Operator::zero(const SpaceLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.dim_total());
  return {layout, Mat::Zero(n, n)};
}

bool Operator::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).norm() <= tol * std::max(1.0, matrix_.norm());
}

bool Operator::is_skew_hermitian(double tol) const {
  return (matrix_ + matrix_.adjoint()).norm() <= tol * std::max(1.0, matrix_.norm());
}

double Operator::hs_norm() const {
  return matrix_.norm() / std::sqrt(static_cast<double>(dim()));
}

Operator& Operator::operator+=(const Operator& o) {
  require_same_layout(*this, o, "operator+");
  matrix_ += o.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_layout(*this, o, "operator-");
  matrix_ -= o.matrix_;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_layout(a, b, "operator*");
  return {a.layout(), a.matrix() * b.matrix()};
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  return {concat(a.layout(), b.layout()), kron(a.matrix(), b.matrix())};
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_layout(a, b, "commutator");
  return {a.layout(), a.matrix() * b.matrix() - b.matrix() * a.matrix()};
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_layout(a, b, "anticommutator");
  return {a.layout(), a.matrix() * b.matrix() + b.matrix() * a.matrix()};
}

cplx hs_inner(const Operator& a, const Operator& b) {
  require_same_layout(a, b, "hs_inner");
  cplx v = (a.matrix().adjoint() * b.matrix()).trace() / static_cast<double>(a.dim());
  const double tol = 1e-10;
  const bool same_class = (a.is_hermitian(tol) && b.is_hermitian(tol)) ||
                          (a.is_skew_hermitian(tol) && b.is_skew_hermitian(tol));
  if (same_class) v = cplx(v.real(), 0.0);
  return v;
}

Operator embed(const Mat& e_op, const Mat& s_op, const SpaceLayout& layout) {
  if (!layout.is_bipartite()) throw std::invalid_argument("embed needs a bipartite layout");
  if (e_op.rows() != static_cast<Eigen::Index>(layout.dim_e()) ||
      s_op.rows() != static_cast<Eigen::Index>(layout.dim_s())) {
    throw std::invalid_argument("embed: factor dimensions do not match layout");
  }
  return {layout, kron(e_op, s_op)};
}

Mat partial_trace_s(const Mat& m, std::size_t dim_e, std::size_t dim_s) {
  const auto de = static_cast<Eigen::Index>(dim_e);
  const auto ds = static_cast<Eigen::Index>(dim_s);
  Mat out = Mat::Zero(de, de);
  for (Eigen::Index i = 0; i < de; ++i) {
    for (Eigen::Index j = 0; j < de; ++j) {
      out(i, j) = m.block(i * ds, j * ds, ds, ds).trace();
    }
  }
  return out;
}

Mat partial_trace_s_weighted(const Mat& m, const Mat& w, std::size_t dim_e) {
  const auto de = static_cast<Eigen::Index>(dim_e);
  const Eigen::Index ds = w.rows();
  Mat out = Mat::Zero(de, de);
  for (Eigen::Index i = 0; i < de; ++i) {
    for (Eigen::Index j = 0; j < de; ++j) {
      // Tr(B_ij w) = sum_{ab} B_ij(a,b) w(b,a)
      out(i, j) = (m.block(i * ds, j * ds, ds, ds).cwiseProduct(w.transpose())).sum();
    }
  }
  return out;
}

double frobenius_residual(const Mat& a, const Mat& b) { return (a - b).norm(); }

}  // namespace dla
