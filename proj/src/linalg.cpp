#include "dla/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace dla {

namespace {

template <typename MatrixT>
struct SvdNull {
  MatrixT basis;
  bool fragile = false;
  double cutoff = 0.0;
};

template <typename MatrixT>
SvdNull<MatrixT> svd_null(const MatrixT& a, double tau) {
  const Eigen::Index n = a.cols();
  SvdNull<MatrixT> out;
  if (n == 0) {
    out.basis = MatrixT(0, 0);
    return out;
  }
  if (a.rows() == 0) {
    out.basis = MatrixT::Identity(n, n);
    return out;
  }
  // BDCSVD in Eigen 3.4.0 breaks down on matrices with many exactly zero
  // singular values (deflation), which is the common case here.
  if (n <= 64) {
    Eigen::JacobiSVD<MatrixT> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    out.cutoff = tau * std::max(1.0, smax);
    Eigen::Index kept = 0;  // number of singular values above cutoff
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > out.cutoff) ++kept;
      if (s(i) > out.cutoff / 10.0 && s(i) < out.cutoff * 10.0) out.fragile = true;
    }
    out.basis = svd.matrixV().rightCols(n - kept);
    return out;
  }
  // Large: the null space of a is the complement of the range of a^dagger,
  // read off a column-pivoted QR; |R_ii| stand in for singular values.
  const MatrixT at = a.adjoint();
  Eigen::ColPivHouseholderQR<MatrixT> qr(at);
  const auto& r = qr.matrixR();
  const Eigen::Index steps = std::min(at.rows(), at.cols());
  const double rmax = steps > 0 ? std::abs(r(0, 0)) : 0.0;
  out.cutoff = tau * std::max(1.0, rmax);
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < steps; ++i) {
    const double v = std::abs(r(i, i));
    if (v > out.cutoff) ++kept;
    if (v > out.cutoff / 10.0 && v < out.cutoff * 10.0) out.fragile = true;
  }
  const MatrixT q = qr.householderQ();
  out.basis = q.rightCols(n - kept);
  return out;
}

Mat vec_to_mat(const Eigen::Ref<const Eigen::VectorXcd>& v, Eigen::Index d) {
  return Eigen::Map<const Mat>(v.data(), d, d);
}

}  // namespace

NullSpace null_space(const RealMat& a, double tau) {
  auto r = svd_null(a, tau);
  return {std::move(r.basis), r.fragile, r.cutoff};
}

ComplexNullSpace null_space(const Mat& a, double tau) {
  auto r = svd_null(a, tau);
  return {std::move(r.basis), r.fragile};
}

double generic_weight(std::size_t k) {
  // fractional parts of k * golden ratio, shifted away from zero
  const double phi = 0.6180339887498949;
  const double f = std::fmod(0.5 + static_cast<double>(k + 1) * phi, 1.0);
  return 0.25 + f;
}

CommutantBasis commutant_basis(const std::vector<Mat>& ops, double tau) {
  if (ops.empty()) throw std::invalid_argument("commutant of an empty set");
  const Eigen::Index d = ops.front().rows();
  const Eigen::Index d2 = d * d;

  Mat g = Mat::Zero(d, d);
  for (std::size_t k = 0; k < ops.size(); ++k) g += generic_weight(k) * ops[k];

  // Start from the commutant of one generic element: block diagonal in its
  // eigenbasis. Loose clustering only enlarges the start space.
  Eigen::MatrixXcd c;  // columns: vec of orthonormal basis matrices
  Mat h;
  if ((g + g.adjoint()).norm() <= 1e-10 * std::max(1.0, g.norm())) {
    h = -kI * g;
  } else if ((g - g.adjoint()).norm() <= 1e-10 * std::max(1.0, g.norm())) {
    h = g;
  }
  if (h.size() > 0) {
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const auto& ev = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<std::vector<Eigen::Index>> clusters;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (clusters.empty() || ev(i) - ev(clusters.back().back()) > 1e-6 * scale) {
        clusters.push_back({i});
      } else {
        clusters.back().push_back(i);
      }
    }
    Eigen::Index count = 0;
    for (const auto& cl : clusters) count += static_cast<Eigen::Index>(cl.size() * cl.size());
    c.resize(d2, count);
    Eigen::Index col = 0;
    for (const auto& cl : clusters) {
      for (auto a : cl) {
        for (auto b : cl) {
          Mat x = v.col(a) * v.col(b).adjoint();
          c.col(col++) = Eigen::Map<Eigen::VectorXcd>(x.data(), d2);
        }
      }
    }
  } else {
    c = Mat::Identity(d2, d2);
  }

  bool fragile = false;
  for (const auto& b : ops) {
    const Eigen::Index m = c.cols();
    if (m == 0) break;
    Mat k(d2, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Mat x = vec_to_mat(c.col(i), d);
      Mat comm = x * b - b * x;
      k.col(i) = Eigen::Map<Eigen::VectorXcd>(comm.data(), d2);
    }
    auto ns = null_space(k, tau);
    fragile = fragile || ns.fragile;
    if (ns.basis.cols() == m) continue;
    c = c * ns.basis;
  }

  CommutantBasis out;
  out.fragile = fragile;
  for (Eigen::Index i = 0; i < c.cols(); ++i) out.basis.push_back(vec_to_mat(c.col(i), d));
  return out;
}

OperatorSpace intersect(const OperatorSpace& a, const OperatorSpace& b, double tau,
                        bool* fragile) {
  if (!(a.layout() == b.layout()) || a.hermiticity() != b.hermiticity()) {
    throw std::invalid_argument("intersect: spaces differ in layout or class");
  }
  OperatorSpace out(a.layout(), a.hermiticity(), a.tolerance().tau_rank);
  if (a.empty() || b.empty()) return out;
  const RealMat qa = a.coords();
  const RealMat qb = b.coords();
  const RealMat res = qa - qb * (qb.transpose() * qa);
  auto ns = null_space(res, tau);
  if (fragile) *fragile = *fragile || ns.fragile;
  const RealMat coords = qa * ns.basis;
  for (Eigen::Index c = 0; c < coords.cols(); ++c) out.insert_coords(coords.col(c));
  return out;
}

Mat projection_range(const Mat& p) {
  Mat herm = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  }
  Mat out(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(cols[i]);
  }
  return out;
}

Mat column_range(const Mat& p, double tol) {
  const Eigen::Index n = p.rows();
  const auto r = static_cast<Eigen::Index>(std::llround(p.trace().real()));
  Mat out(n, 0);
  auto residual = [&](Eigen::Index k) {
    Eigen::VectorXcd v = p.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      if (out.cols() > 0) v -= out * (out.adjoint() * v);
    }
    return v;
  };
  auto append = [&](const Eigen::VectorXcd& v) {
    out.conservativeResize(n, out.cols() + 1);
    out.col(out.cols() - 1) = v / v.norm();
  };
  // in column order while the residuals are comfortably large
  for (Eigen::Index k = 0; k < p.cols() && out.cols() < r; ++k) {
    Eigen::VectorXcd v = residual(k);
    if (v.norm() > std::max(tol, 1e-3)) append(v);
  }
  // then largest residual first
  while (out.cols() < r) {
    Eigen::VectorXcd best;
    double bn = 0.0;
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
      Eigen::VectorXcd v = residual(k);
      if (v.norm() > bn) {
        bn = v.norm();
        best = v;
      }
    }
    if (bn <= tol) break;
    append(best);
  }
  return out;
}

}  // namespace dla
