#include "dla/operator_space.hpp"

#include <cmath>
#include <stdexcept>

namespace dla {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace

const char* to_string(Hermiticity h) {
  return h == Hermiticity::Hermitian ? "hermitian" : "skew-hermitian";
}

// A skew-Hermitian operator is packed as the Hermitian operator -i*m.
RealVec pack(const Mat& m, Hermiticity h) {
  const Eigen::Index n = m.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  RealVec v(n * n);
  Eigen::Index k = 0;
  const bool skew = h == Hermiticity::SkewHermitian;
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = m(i, i);
    v(k++) = (skew ? d.imag() : d.real()) * scale;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // average the two triangles so tiny asymmetries do not bias the coordinates
      cplx z = skew ? 0.5 * (m(i, j) - std::conj(m(j, i))) * cplx(0.0, -1.0)
                    : 0.5 * (m(i, j) + std::conj(m(j, i)));
      v(k++) = kSqrt2 * z.real() * scale;
      v(k++) = kSqrt2 * z.imag() * scale;
    }
  }
  return v;
}

Mat unpack(const RealVec& v, std::size_t dim, Hermiticity h) {
  const auto n = static_cast<Eigen::Index>(dim);
  const double scale = std::sqrt(static_cast<double>(n));
  Mat m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = v(k++) * scale;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double re = v(k++) * scale / kSqrt2;
      const double im = v(k++) * scale / kSqrt2;
      m(i, j) = cplx(re, im);
      m(j, i) = cplx(re, -im);
    }
  }
  if (h == Hermiticity::SkewHermitian) m *= kI;
  return m;
}

OperatorSpace::OperatorSpace(SpaceLayout layout, Hermiticity h, double tau_rank)
    : layout_(std::move(layout)), herm_(h) {
  tol_.tau_rank = tau_rank;
  const auto n = static_cast<Eigen::Index>(layout_.dim_total());
  q_.resize(n * n, 0);
}

OperatorSpace OperatorSpace::span(const SpaceLayout& layout, Hermiticity h,
                                  const std::vector<Operator>& ops, double tau_rank) {
  OperatorSpace s(layout, h, tau_rank);
  for (const auto& op : ops) s.insert(op);
  return s;
}

OperatorSpace OperatorSpace::from_orthonormal_coords(const SpaceLayout& layout, Hermiticity h,
                                                     const RealMat& coords, double tau_rank) {
  OperatorSpace s(layout, h, tau_rank);
  for (Eigen::Index c = 0; c < coords.cols(); ++c) s.insert_coords(coords.col(c));
  return s;
}

bool OperatorSpace::insert(const Operator& candidate) {
  if (!(candidate.layout() == layout_)) {
    throw std::invalid_argument("span_insert: layout mismatch " + candidate.layout().to_string() +
                                " vs " + layout_.to_string());
  }
  const bool ok = herm_ == Hermiticity::Hermitian ? candidate.is_hermitian(1e-8)
                                                  : candidate.is_skew_hermitian(1e-8);
  if (!ok) {
    throw std::invalid_argument(std::string("span_insert: candidate is not ") + to_string(herm_));
  }
  return insert_coords(pack(candidate.matrix(), herm_));
}

bool OperatorSpace::insert_coords(const RealVec& v) {
  const double norm = v.norm();
  const double threshold = tol_.tau_rank * std::max(1.0, norm);
  const auto r = static_cast<Eigen::Index>(rank());
  RealVec res = v;
  if (r > 0) {
    const auto q = q_.leftCols(r);
    res.noalias() -= q * (q.transpose() * res);
    res.noalias() -= q * (q.transpose() * res);
  }
  const double rn = res.norm();
  if (rn > threshold / 10.0 && rn < threshold * 10.0) ++tol_.near_threshold;
  if (rn > threshold) {
    if (tol_.smallest_accepted == 0.0 || rn < tol_.smallest_accepted) tol_.smallest_accepted = rn;
    append(res / rn);
    return true;
  }
  tol_.largest_rejected = std::max(tol_.largest_rejected, rn);
  return false;
}

void OperatorSpace::append(const RealVec& unit) {
  const auto r = static_cast<Eigen::Index>(rank());
  if (r >= q_.cols()) {
    const Eigen::Index cap = std::max<Eigen::Index>(8, 2 * q_.cols());
    RealMat grown(q_.rows(), std::min<Eigen::Index>(cap, q_.rows()));
    grown.leftCols(r) = q_.leftCols(r);
    q_.swap(grown);
  }
  q_.col(r) = unit;
  basis_.emplace_back(layout_, unpack(unit, dim(), herm_));
}

RealVec OperatorSpace::project_coords(const RealVec& v) const {
  const auto r = static_cast<Eigen::Index>(rank());
  if (r == 0) return RealVec::Zero(v.size());
  const auto q = q_.leftCols(r);
  return q * (q.transpose() * v);
}

Operator OperatorSpace::project(const Operator& op) const {
  if (!(op.layout() == layout_)) throw std::invalid_argument("project_onto: layout mismatch");
  // Split op into Hermitian and skew parts; only the part matching this
  // space's class can have a nonzero projection.
  const Mat& m = op.matrix();
  const Mat part = herm_ == Hermiticity::Hermitian ? Mat(0.5 * (m + m.adjoint()))
                                                   : Mat(0.5 * (m - m.adjoint()));
  return {layout_, unpack(project_coords(pack(part, herm_)), dim(), herm_)};
}

double OperatorSpace::residual(const Operator& op) const {
  return (op.matrix() - project(op).matrix()).norm() / std::sqrt(static_cast<double>(dim()));
}

bool OperatorSpace::contains(const Operator& op, double tau) const {
  return residual(op) <= tau * std::max(op.hs_norm(), 1e-300);
}

RealMat OperatorSpace::gram() const {
  const auto q = coords();
  return q.transpose() * q;
}

InsertResult span_insert(OperatorSpace space, const Operator& candidate, double tau_rank) {
  space.tolerance().tau_rank = tau_rank;
  const bool grew = space.insert(candidate);
  return {std::move(space), grew};
}

Operator project_onto(const OperatorSpace& space, const Operator& op) { return space.project(op); }

bool membership(const OperatorSpace& space, const Operator& op, double tau) {
  return space.contains(op, tau);
}

double max_residual_in(const OperatorSpace& a, const OperatorSpace& b) {
  if (a.empty()) return 0.0;
  if (!(a.layout() == b.layout())) throw std::invalid_argument("subspace test: layout mismatch");
  if (a.hermiticity() != b.hermiticity()) {
    double worst = 0.0;
    for (const auto& x : a.basis()) worst = std::max(worst, b.residual(x) / x.hs_norm());
    return worst;
  }
  // basis elements are unit vectors, so the residual is already relative
  const RealMat qa = a.coords();
  const RealMat res = qa - b.coords() * (b.coords().transpose() * qa);
  return res.colwise().norm().maxCoeff();
}

bool is_subspace(const OperatorSpace& a, const OperatorSpace& b, double tau) {
  return max_residual_in(a, b) <= tau;
}

double mutual_residual(const OperatorSpace& a, const OperatorSpace& b) {
  return std::max(max_residual_in(a, b), max_residual_in(b, a));
}

bool same_span(const OperatorSpace& a, const OperatorSpace& b, double tau) {
  return a.rank() == b.rank() && mutual_residual(a, b) <= tau;
}

OperatorSpace sum(const OperatorSpace& a, const OperatorSpace& b) {
  OperatorSpace out(a.layout(), a.hermiticity(), a.tolerance().tau_rank);
  const RealMat qa = a.coords();
  for (Eigen::Index c = 0; c < qa.cols(); ++c) out.insert_coords(qa.col(c));
  if (b.hermiticity() == a.hermiticity()) {
    const RealMat qb = b.coords();
    for (Eigen::Index c = 0; c < qb.cols(); ++c) out.insert_coords(qb.col(c));
  } else {
    for (const auto& x : b.basis()) out.insert(x);
  }
  return out;
}

OperatorSpace times_i(const OperatorSpace& s) {
  const Hermiticity flipped = s.hermiticity() == Hermiticity::Hermitian
                                  ? Hermiticity::SkewHermitian
                                  : Hermiticity::Hermitian;
  // i*(skew) packs to the same coordinates up to sign: skew m packs as -i m.
  // For Hermitian h, i*h is skew and packs as -i*(i h) = h. So coordinates of
  // i*s equal those of s (Hermitian -> skew) or their negation (skew -> Hermitian).
  RealMat q = s.coords();
  if (s.hermiticity() == Hermiticity::SkewHermitian) q = -q;
  return OperatorSpace::from_orthonormal_coords(s.layout(), flipped, q, s.tolerance().tau_rank);
}

}  // namespace dla
