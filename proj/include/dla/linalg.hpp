#pragma once

#include <vector>

#include "dla/operator_space.hpp"

namespace dla {

struct NullSpace {
  RealMat basis;               // orthonormal columns
  bool fragile = false;        // a singular value sat within 10x of the cutoff
  double cutoff = 0.0;
};

/// Numerical null space of `a`: right singular vectors whose singular value is
/// <= tau * max(1, sigma_max).
NullSpace null_space(const RealMat& a, double tau);

struct ComplexNullSpace {
  Mat basis;
  bool fragile = false;
};
ComplexNullSpace null_space(const Mat& a, double tau);

/// Complex basis of {X : [X, b] = 0 for every b in ops}. Works by restricting
/// to the commutant of one generic combination first, then imposing each
/// element in turn.
struct CommutantBasis {
  std::vector<Mat> basis;
  bool fragile = false;
};
CommutantBasis commutant_basis(const std::vector<Mat>& ops, double tau);

/// Intersection of two spans of the same class; `fragile` flags a singular
/// value near the cutoff.
OperatorSpace intersect(const OperatorSpace& a, const OperatorSpace& b, double tau,
                        bool* fragile = nullptr);

/// Orthonormal basis of the range of an (approximate) orthogonal projection.
Mat projection_range(const Mat& p);

/// Same range, but built by Gram-Schmidt over the columns p|0>, p|1>, ... so a
/// projection onto computational basis vectors returns exactly those vectors.
Mat column_range(const Mat& p, double tol = 1e-6);

/// Deterministic "generic" weights for combinations that should avoid
/// accidental degeneracies (golden-ratio sequence, never zero).
double generic_weight(std::size_t k);

}  // namespace dla
