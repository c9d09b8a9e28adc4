#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dla/pauli.hpp"
#include "dla/structure.hpp"

namespace dla {

/// One Hamiltonian term in physical site order.
struct Term {
  double coefficient = 1.0;
  std::vector<PauliSymbol> symbols;
  bool operator==(const Term&) const = default;
};

/// Hamiltonian h0 on physical sites 0..n-1 with the sites in `s_sites`
/// forming H_S. Internally E sites come first; see internal_order().
struct HamiltonianSpec {
  std::vector<std::size_t> site_dims;
  std::vector<std::size_t> s_sites;
  std::vector<Term> terms;
  std::string name;
  std::string source;
  /// When set, terms are drawn by random_drift at materialization.
  std::optional<std::size_t> random_locality;
  std::optional<std::uint64_t> seed;
  std::optional<DeclaredStructure> structure;
  std::vector<std::string> warnings;

  /// Field-level equality; term order is ignored.
  bool operator==(const HamiltonianSpec& o) const;
};

/// Physical site indices in internal factor order: E sites in descending
/// order, then S sites in descending order.
std::vector<std::size_t> internal_order(const HamiltonianSpec& spec);
SpaceLayout internal_layout(const HamiltonianSpec& spec);

/// Hermitian h0 on the internal layout. Random specs must be expanded first.
Operator hamiltonian(const HamiltonianSpec& spec);
/// The drift generator i*h0.
Operator drift_generator(const HamiltonianSpec& spec);

/// (1/2) sum_k c_k [(1+gamma) X_k X_k+1 + (1-gamma) Y_k Y_k+1] + sum_k b_k Z_k,
/// open chain, S = site 0.
HamiltonianSpec xx_chain(std::size_t n, const std::vector<double>& c,
                         const std::vector<double>& b, double gamma);
/// X1 X2 + Y1 Y2 + X2 X3 on three qubits, S = site 0.
HamiltonianSpec xx_prime();

/// Gaussian coefficients on every generalized Pauli string of weight
/// 1..locality (default: all sites), in lexicographic order.
HamiltonianSpec random_drift(const std::vector<std::size_t>& site_dims,
                             const std::vector<std::size_t>& s_sites, std::uint64_t seed,
                             std::optional<std::size_t> locality = std::nullopt);

/// Replaces a `random` spec by its drawn terms; other specs are returned as is.
HamiltonianSpec expand_random(const HamiltonianSpec& spec, std::uint64_t default_seed = 0);

/// Counter-based generator: SplitMix64 finalizer over seed + (counter+1)*golden.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next_u64();
  double uniform();   // in [0, 1)
  double gaussian();  // Box-Muller, cosine branch only

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace dla
