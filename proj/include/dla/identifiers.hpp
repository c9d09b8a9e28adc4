#pragma once

#include <string>
#include <vector>

#include "dla/operator_space.hpp"

namespace dla {

/// Identifier spaces of L on H_E:
///   G0 = span{ Tr_S(g)/dim_S },  G1 = span{ g_W } with g = g_Id (x) Id + sum_W g_W (x) W.
/// Both are skew-Hermitian; i*G1 is the Jordan-algebra candidate.
struct IdentifierPair {
  OperatorSpace G0;
  OperatorSpace G1;
  std::size_t dim_s = 0;

  /// i*G1 as a Hermitian space.
  OperatorSpace jordan() const { return times_i(G1); }
};

IdentifierPair extract_identifiers(const OperatorSpace& L, double tau_rank = 1e-9);

/// span(G0 (x) Id_S  u  iG1 (x) su(dim_S)) on the bipartite layout.
OperatorSpace reconstruct(const IdentifierPair& pair, const SpaceLayout& layout,
                          double tau_rank = 1e-9);

struct RelationCheck {
  std::string name;
  double residual = 0.0;
  bool holds = false;
  bool required = true;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

struct RelationReport {
  std::vector<RelationCheck> checks;  // [G0,G0]<G0, [G1,G1]<G0, [G0,G1]<G1, i{G1,G1}<G1, [G1,G1]<G1
  bool pass = false;                  // every required check holds
  const RelationCheck* find(const std::string& name) const;
};

RelationReport check_identifier_relations(const IdentifierPair& pair, double tau = 1e-8);

}  // namespace dla
