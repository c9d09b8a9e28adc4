#pragma once

#include <string>

#include <json.hpp>

#include "dla/structure.hpp"

namespace dla {

inline constexpr int kSchemaVersion = 1;

enum class Status { Pass = 0, InputError = 1, Structural = 2, Fragile = 3 };

std::string sha256_hex(const std::string& bytes);

nlohmann::json tolerances_json(const Tolerances& tol);
nlohmann::json type_json(const JordanType& t);

/// Report for closure / identifiers / classify / analyze, filled up to a.reached.
nlohmann::json analysis_json(const Analysis& a, const Tolerances& tol,
                             const std::string& input_hash, const std::string& command);
Status analysis_status(const Analysis& a);

nlohmann::json expansion_json(const Analysis& original, const ExpansionReport& e,
                              const Tolerances& tol, const std::string& input_hash,
                              std::size_t dim_sprime);
Status expansion_status(const Analysis& original, const ExpansionReport& e);

struct CheckResult {
  SufficiencyReport sufficiency;
  bool types_match = false;
  std::vector<TypeDescriptor> declared;
  std::vector<TypeDescriptor> computed;
  /// Tr(P_decl P_comp) / Tr(P_comp), declared blocks on consecutive ranges.
  std::vector<std::vector<double>> overlaps;
  bool pass = false;
};

CheckResult run_check(const DeclaredStructure& s, const Analysis& a, const Tolerances& tol);
nlohmann::json check_json(const Analysis& a, const CheckResult& c, const Tolerances& tol,
                          const std::string& input_hash);

/// Human-readable rendering of any of the reports above.
std::string text_summary(const nlohmann::json& report);

std::string status_name(Status s);

}  // namespace dla
