#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dla/canonical.hpp"
#include "dla/identifiers.hpp"
#include "dla/jordan.hpp"
#include "dla/lie.hpp"

namespace dla {

struct Tolerances {
  double tau_rank = 1e-9;
  double tau_herm = 1e-12;
  double tau_frame = 1e-8;
  double tau_spec = 1e-8;
  /// Residual threshold for span equalities and relation checks.
  double tau_check = 1e-8;

  JordanOptions jordan() const { return {tau_rank, tau_frame, tau_spec}; }
};

/// A failure tagged with the pipeline stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct BlockStructure {
  JordanBlock block;
  CanonicalIsometry iso;
  std::size_t dim = 0;  // dim H_Ej*
  // regime >= 3 only: H_Ej* = H_B (x) H_R
  std::size_t dim_b = 0;
  std::size_t dim_r = 0;
};

struct StructureReport {
  std::size_t dim_s = 0;
  int regime = 2;  // 2 or 3 (dim_S >= 3)
  std::vector<BlockStructure> blocks;
  OperatorSpace L_d_expected;
  OperatorSpace L_c_expected;
  double ld_residual = 0.0;
  double lc_residual = 0.0;
  double isometry_residual = 0.0;
  bool regime_types_ok = true;  // regime >= 3: R, M^(2) / S4 with Z* = +-Id
  bool pass = false;
  std::string failure;
};

/// Pulls the canonical companion sets of every block back to H_E and
/// compares the assembled L_d, L_c with the computed ones.
StructureReport decompose(const Classification& cls, const JordanFrame& frame,
                          const OperatorSpace& J, const AlgebraTriple& triple,
                          const SpaceLayout& layout, const Tolerances& tol = {});

/// Whether a type may appear when dim_S >= 3.
bool allowed_in_regime3(const JordanType& t);

enum class Stage { Closure, Identifiers, Classify, Analyze };

struct Analysis {
  SpaceLayout layout;
  std::vector<Operator> drifts;      // skew-Hermitian, i*h0
  std::vector<Operator> generators;  // drifts, then control_generators(layout)
  ClosureResult closure;
  AlgebraTriple triple;
  Theorem1Report theorem1;
  IdentifierPair identifiers;
  RelationReport relations;
  OperatorSpace J;
  JordanFrame frame;
  FrameResiduals frame_res;
  Classification classification;
  StructureReport structure;
  Stage reached = Stage::Closure;
  std::vector<std::string> fragile;
};

/// Runs the pipeline up to `stop`. Throws StageError.
Analysis analyze(const std::vector<Operator>& drifts, const SpaceLayout& layout,
                 const Tolerances& tol = {}, Stage stop = Stage::Analyze);

/// Smallest Hermitian space containing `j` and closed under i[.,.] and {.,.}.
OperatorSpace bi_closure(const OperatorSpace& j, double tau_rank = 1e-9);

struct BlockMatch {
  std::size_t original = 0;
  std::vector<std::size_t> images;
  bool split_expected = false;
  double projector_residual = 0.0;
  bool ok = false;
};

struct ExpansionReport {
  Analysis expanded;
  std::vector<BlockMatch> block_map;
  std::vector<std::vector<double>> overlaps;  // [original][expanded]
  double ld_residual = 0.0;                   // L_d' vs L_d (x) Id_S'
  std::size_t survived_rank = 0;
  std::size_t original_rank = 0;
  double survived_residual = 0.0;
  bool survived_match = false;
  double biclosure_residual = 0.0;  // iG1' vs bi-closure of iG1
  bool pass = false;
  std::string failure;
};

ExpansionReport ancilla_expand(const Analysis& original, std::size_t dim_sprime,
                               const Tolerances& tol = {});

/// A declared block of the candidate structure. Regime >= 3 blocks carry
/// (B, R); regime-2 blocks carry a Jordan type.
struct DeclaredBlock {
  std::size_t dim_b = 1;
  std::size_t dim_r = 1;
  std::optional<JordanType> type;

  std::size_t dim() const { return type ? type->block_dim() : dim_b * dim_r; }
  /// Equivalent Jordan type (R -> real, 2 -> S4, >= 3 -> M_R^(2) with Z* = Id).
  JordanType jordan_type() const;
};

struct DeclaredStructure {
  int regime = 3;
  std::vector<DeclaredBlock> blocks;
  bool ld_full = true;
};

struct SufficiencyReport {
  bool closed = false;
  double closure_residual = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  std::size_t rank_tilde = 0;
  std::size_t rank_lc = 0;
  std::size_t rank_ld = 0;
  double lc_residual = 0.0;
  double ld_residual = 0.0;
  bool pass = false;
  std::string failure;
};

/// Builds the declared L_d and L_c on consecutive ranges of H_E, checks that
/// span(L_d' u L_c) is a Lie algebra and that its connected/disconnected
/// algebras are the declared ones.
SufficiencyReport sufficiency_check(const DeclaredStructure& s, const SpaceLayout& layout,
                                    const Tolerances& tol = {});

/// Expected L_d and L_c of a declared structure.
std::pair<OperatorSpace, OperatorSpace> declared_algebras(const DeclaredStructure& s,
                                                          const SpaceLayout& layout,
                                                          double tau_rank = 1e-9);

}  // namespace dla
