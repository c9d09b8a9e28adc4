#pragma once

#include <vector>

#include "dla/identifiers.hpp"
#include "dla/jordan.hpp"

namespace dla {

/// Canonical (J, J-bar, J-hat) of a type, as Hermitian spans on the plain
/// layout [dim_A, q_dims...]. Z* is type.zstar_matrix().
struct CompanionSets {
  OperatorSpace J;
  OperatorSpace Jbar;
  OperatorSpace Jhat;
};

OperatorSpace canonical_jordan(const JordanType& t, double tau_rank = 1e-9);
OperatorSpace canonical_bar(const JordanType& t, double tau_rank = 1e-9);
OperatorSpace canonical_hat(const JordanType& t, double tau_rank = 1e-9);
CompanionSets companion_sets(const JordanType& t, double tau_rank = 1e-9);

/// Smallest Hermitian set containing the canonical J that is closed under
/// both i[.,.] and {.,.}: Id_A (x) Herm(Q) with the Z* eigenspaces kept apart
/// for the M^(2) and even S types.
OperatorSpace canonical_primed(const JordanType& t, double tau_rank = 1e-9);

struct CompanionReport {
  std::vector<RelationCheck> checks;
  bool pass = false;
};

/// i[Jb,Jb] in Jb; Jb = iL([J,J]); i[Jb,J] in J; J = L({J,J}); [Jh,J] = [Jh,Jb] = 0;
/// {h : i[h,J] in J} = span(Jh u Jb); commutant(J) = Jh.
CompanionReport verify_companion_relations(const OperatorSpace& J, const OperatorSpace& Jbar,
                                           const OperatorSpace& Jhat, double tau = 1e-8);

/// Hermitian h with i[h, J] inside J, by null space.
OperatorSpace pseudo_ideal(const OperatorSpace& J, double tau_rank = 1e-9);
/// Hermitian operators commuting with every element of J.
OperatorSpace hermitian_commutant(const OperatorSpace& J, double tau_rank = 1e-9);

struct CanonicalIsometry {
  /// block_dim x dim_E isometry: U J U^dagger is the canonical J of `type`.
  Mat U;
  JordanType type;  // zstar replaced by diag(+1.., -1..)
  double residual = 0.0;
};

CanonicalIsometry canonical_isometry(const JordanFrame& frame, const JordanBlock& block,
                                     const OperatorSpace& J, const JordanOptions& opt = {});

/// Intertwiner W (columns: target coordinates a (x) q) with W Gamma_k = g_k W
/// for g_k the first 2r of `gens`, given an orthonormal basis `vac` of the
/// source vacuum. Targets: Gamma_(2m-1) = I..(x)X(x)Y^(m-1), Gamma_(2m) = I..(x)Z(x)Y^(m-1).
Mat clifford_intertwiner(const std::vector<Mat>& gens, std::size_t r, const Mat& vac);

/// Targets Gamma_1..Gamma_2r on C^dim_a (x) (C^2)^r.
std::vector<Mat> clifford_targets(std::size_t dim_a, std::size_t r);

}  // namespace dla
