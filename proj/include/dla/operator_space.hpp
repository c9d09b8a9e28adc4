#pragma once

#include <cstddef>
#include <vector>

#include "dla/operator.hpp"

namespace dla {

enum class Hermiticity { Hermitian, SkewHermitian };

const char* to_string(Hermiticity h);

/// Real coordinates of a Hermitian (or skew-Hermitian) operator such that the
/// Euclidean dot product equals Re Tr(a^dagger b) / dim. Length dim^2.
RealVec pack(const Mat& m, Hermiticity h);
Mat unpack(const RealVec& v, std::size_t dim, Hermiticity h);

/// Threshold and near-threshold bookkeeping for rank decisions on one space.
struct ToleranceRecord {
  double tau_rank = 1e-9;
  /// Span decisions whose residual landed within a factor 10 of the threshold.
  std::size_t near_threshold = 0;
  double smallest_accepted = 0.0;  // smallest residual that grew the space
  double largest_rejected = 0.0;   // largest residual judged dependent
};

/// Hilbert-Schmidt orthonormal real-linear basis of Hermitian or
/// skew-Hermitian operators on a common layout.
///
/// Insertion is two-pass modified Gram-Schmidt; basis order is insertion
/// order, so identical insertion sequences give bit-identical spaces.
class OperatorSpace {
 public:
  OperatorSpace() = default;
  OperatorSpace(SpaceLayout layout, Hermiticity h, double tau_rank = 1e-9);

  /// Span of `ops`, inserted in order.
  static OperatorSpace span(const SpaceLayout& layout, Hermiticity h,
                            const std::vector<Operator>& ops, double tau_rank = 1e-9);
  /// Builds directly from orthonormal real coordinates (columns).
  static OperatorSpace from_orthonormal_coords(const SpaceLayout& layout, Hermiticity h,
                                               const RealMat& coords, double tau_rank);

  /// Residual test + append; returns true when the rank grew.
  bool insert(const Operator& candidate);
  /// Same as insert() on packed coordinates (skips the hermiticity check).
  bool insert_coords(const RealVec& v);

  const SpaceLayout& layout() const { return layout_; }
  Hermiticity hermiticity() const { return herm_; }
  std::size_t rank() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  std::size_t dim() const { return layout_.dim_total(); }
  const std::vector<Operator>& basis() const { return basis_; }
  const Operator& operator[](std::size_t i) const { return basis_[i]; }
  /// dim^2 x rank matrix of orthonormal coordinates.
  RealMat coords() const { return q_.leftCols(static_cast<Eigen::Index>(rank())); }
  const ToleranceRecord& tolerance() const { return tol_; }
  ToleranceRecord& tolerance() { return tol_; }

  Operator project(const Operator& op) const;
  RealVec project_coords(const RealVec& v) const;
  /// HS norm of op minus its projection.
  double residual(const Operator& op) const;
  /// residual <= tau * max(norm(op), tiny).
  bool contains(const Operator& op, double tau) const;

  RealMat gram() const;

 private:
  void append(const RealVec& unit);

  SpaceLayout layout_;
  Hermiticity herm_ = Hermiticity::SkewHermitian;
  ToleranceRecord tol_;
  RealMat q_;  // capacity dim^2 columns, first rank() valid
  std::vector<Operator> basis_;
};

struct InsertResult {
  OperatorSpace space;
  bool grew = false;
};

InsertResult span_insert(OperatorSpace space, const Operator& candidate, double tau_rank);
Operator project_onto(const OperatorSpace& space, const Operator& op);
bool membership(const OperatorSpace& space, const Operator& op, double tau);

/// Largest relative residual of a's basis elements against b (0 when a is empty).
double max_residual_in(const OperatorSpace& a, const OperatorSpace& b);
bool is_subspace(const OperatorSpace& a, const OperatorSpace& b, double tau);
/// a subset of b and b subset of a; returns the larger of the two residuals.
double mutual_residual(const OperatorSpace& a, const OperatorSpace& b);
bool same_span(const OperatorSpace& a, const OperatorSpace& b, double tau);

/// span(a u b).
OperatorSpace sum(const OperatorSpace& a, const OperatorSpace& b);

/// Space multiplied by i: Hermitian <-> skew-Hermitian.
OperatorSpace times_i(const OperatorSpace& s);

}  // namespace dla
