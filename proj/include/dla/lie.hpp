#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dla/operator_space.hpp"

namespace dla {

struct ClosureResult {
  OperatorSpace algebra;
  std::vector<std::size_t> rank_log;  // rank after seeding, then after each sweep
  bool saturated = false;
  std::size_t iterations = 0;
};

/// Real Lie algebra generated by skew-Hermitian `generators`.
///
/// Breadth-first: every newly inserted element is bracketed with each
/// generator (the span of iterated ad_g images of the generators is the
/// generated algebra). One sweep processes one generation of new elements.
/// `max_iter` = 0 means dim_total^2.
ClosureResult close_lie(const std::vector<Operator>& generators, const SpaceLayout& layout,
                        double tau_rank = 1e-9, std::size_t max_iter = 0);

/// Smallest ideal of L containing `seed`. `ad_set` should generate L as a Lie
/// algebra (the closure generators); when empty, the basis of L is used.
OperatorSpace connected_algebra(const OperatorSpace& L, const OperatorSpace& seed,
                                double tau_rank = 1e-9,
                                const std::vector<Operator>& ad_set = {});

/// All skew-Hermitian operators commuting with every element of `target`
/// (full u(dim), trace part included).
OperatorSpace commutant(const OperatorSpace& target, double tau_rank = 1e-9,
                        bool* fragile = nullptr);

struct AlgebraTriple {
  OperatorSpace L;
  OperatorSpace L_c;
  OperatorSpace L_d;          // includes i*Id
  OperatorSpace L_d_cap_L;    // L_d intersected with L
  OperatorSpace L_d_cap_L_traceless;  // same, with the i*Id direction removed first
  bool fragile = false;
};

/// L_c, L_d and the intersection for an already closed L.
AlgebraTriple assemble_triple(const OperatorSpace& L, const OperatorSpace& control,
                              double tau_rank = 1e-9,
                              const std::vector<Operator>& ad_set = {});

struct Theorem1Report {
  bool pass = false;
  double inclusion_residual = 0.0;   // L inside span(L_d u L_c)
  std::size_t cap_rank = 0;          // rank(L_d cap L_c)
  double split_residual = 0.0;       // L vs span((L_d cap L) u L_c), both directions
  bool split_rank_match = false;
  std::optional<std::size_t> violating_element;  // basis index of L, if any
  std::string failure;
};

Theorem1Report verify_theorem1(const AlgebraTriple& t, double tau = 1e-8);

/// Largest relative residual of [x, y] against `space` over x in `a`, y in `b`.
struct BracketCheck {
  double max_residual = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};
BracketCheck bracket_residual(const OperatorSpace& a, const OperatorSpace& b,
                              const OperatorSpace& space);

}  // namespace dla
