#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dla/operator_space.hpp"

namespace dla {

struct JordanOptions {
  double tau_rank = 1e-9;
  double tau_frame = 1e-8;
  double tau_spec = 1e-8;
};

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimal projection of a Hermitian Jordan algebra J (closed under the
/// anticommutator). Elements of the diagonal part of J are preferred as the
/// starting point so that basis-aligned inputs give basis-aligned projections.
/// `ambiguous` is set when an eigenvalue gap lands close to tau_spec.
Mat min_rank_projection(const OperatorSpace& J, const JordanOptions& opt = {},
                        bool* ambiguous = nullptr);

struct JordanFrame {
  std::size_t dim = 0;
  std::vector<Mat> idempotents;
  /// (rho, sigma), rho < sigma -> s_mu with s_mu^2 = e_rho + e_sigma.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Mat>> offdiag;
  std::vector<std::vector<std::size_t>> partition;
  std::vector<std::size_t> chi;  // per partition entry
  bool ambiguous = false;

  std::size_t chi_of(std::size_t rho, std::size_t sigma) const;
  const std::vector<Mat>& s(std::size_t rho, std::size_t sigma) const;
};

struct FrameResiduals {
  double idempotents = 0.0;   // {e_r, e_s} = 2 delta e_r
  double offdiag = 0.0;       // {s_mu, s_nu} = 2 delta (e_r + e_s)
  double mixed = 0.0;         // {e_r, s^(s,t)} = (delta_rs + delta_rt) s
  double completeness = 0.0;  // sum e_r = Id
  double trace_balance = 0.0; // Tr e equal inside a partition class
  double max() const;
};

FrameResiduals frame_residuals(const JordanFrame& f);

/// Peels minimal idempotents off J, builds the off-diagonal spaces and the
/// partition. Throws FrameError when the frame relations fail by > tau_frame.
JordanFrame build_frame(const OperatorSpace& J, const JordanOptions& opt = {});

enum class JordanTag { R, M, S };

struct JordanType {
  JordanTag tag = JordanTag::R;
  std::size_t gamma = 1;  // M: gamma >= 3; S: 2; R: 1
  std::size_t k = 0;      // M: 1, 2 or 4
  std::size_t n = 0;      // S: n >= 3
  std::size_t dim_a = 1;
  std::vector<std::size_t> q_dims;
  /// Hermitian, squares to Id_A; present for M(gamma,2) and S(even n).
  std::optional<Mat> zstar;
  std::size_t zstar_plus = 0;
  std::size_t zstar_minus = 0;

  bool has_zstar() const {
    return (tag == JordanTag::M && k == 2) || (tag == JordanTag::S && n % 2 == 0);
  }
  std::size_t block_dim() const;
  /// Linear dimension of the simple Jordan algebra.
  std::size_t algebra_dim() const;
  std::string label() const;   // R, M3^2, S4
  std::string pretty() const;  // ℜ, 𝔐_3^(2), 𝔖_4
  /// Plain factor dims [dim_A, q...] of the canonical coordinates.
  std::vector<std::size_t> factor_dims() const;
  /// Z* matrix, built as diag(+1.., -1..) from the signature when absent.
  Mat zstar_matrix() const;

  static JordanType real(std::size_t dim_a);
  static JordanType matrix(std::size_t gamma, std::size_t k, std::size_t dim_a,
                           std::size_t plus = 0, std::size_t minus = 0);
  static JordanType spin(std::size_t n, std::size_t dim_a, std::size_t plus = 0,
                         std::size_t minus = 0);
};

/// (tag, gamma, k, n, dim_A, q_dims, signature): the comparison key.
struct TypeDescriptor {
  std::string label;
  std::size_t dim_a = 0;
  std::vector<std::size_t> q_dims;
  std::size_t plus = 0;
  std::size_t minus = 0;
  auto operator<=>(const TypeDescriptor&) const = default;
};
TypeDescriptor descriptor(const JordanType& t);

struct JordanBlock {
  std::vector<std::size_t> frame_indices;
  std::size_t chi = 0;
  Mat projector;        // onto H_Ej*
  JordanType type;
  /// Z* (x) Id_Q pulled back to H_E (block-supported); empty when absent.
  Mat zstar_full;
};

struct Classification {
  std::vector<JordanBlock> blocks;
  double projector_residual = 0.0;  // orthogonality + completeness of block projectors
  double dimension_audit = 0.0;     // |sum algebra_dim - rank J|
  bool ambiguous = false;
};

/// Reads each partition class off the frame: gamma = 1 -> R, gamma = 2 ->
/// S_(chi+2), gamma >= 3 -> M_gamma^(chi). Throws FrameError on chi outside
/// {1,2,4} for gamma >= 3.
Classification classify(const JordanFrame& frame, const OperatorSpace& J,
                        const JordanOptions& opt = {});

/// Sign convention for Z*: #(+1) >= #(-1); ties broken by the first entry
/// (row-major) of magnitude > 1e-6 having positive real part (imaginary if
/// the real part vanishes). Returns the sign applied (+1 or -1).
double normalize_zstar(Mat& z, std::size_t* plus = nullptr, std::size_t* minus = nullptr);

/// Spectral clusters (sorted eigenvalues grouped when gaps <= tol * scale).
struct SpectralCluster {
  double value = 0.0;
  Mat vectors;  // orthonormal columns
};
std::vector<SpectralCluster> spectral_clusters(const Mat& herm, double tol,
                                               bool* ambiguous = nullptr);

/// Clifford generators of a two-idempotent class, ordered s_1, e_a - e_b, s_2, ...
std::vector<Mat> spin_generators(const JordanFrame& f, std::size_t a, std::size_t b);

/// prod_j (unit + i g_2j g_2j+1)/2 over the first `pairs` generator pairs.
Mat clifford_vacuum(const std::vector<Mat>& gens, std::size_t pairs, const Mat& unit);

}  // namespace dla
