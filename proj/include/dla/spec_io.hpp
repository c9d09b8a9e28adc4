#pragma once

#include <stdexcept>
#include <string>

#include "dla/models.hpp"

namespace dla {

class SpecError : public std::runtime_error {
 public:
  SpecError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Statements separated by newlines or ';', '#' to end of line is a comment.
///
///   name: <text>            source: <text>
///   sites: [d0, d1, ...]    S: [i, ...]
///   term: <coef> <XYZI...>  term: <coef> [X0:2 I P1 ...]
///   random: <locality>      seed: <n>
///   structure: regime2 | regime3
///   block: B=<b> R=<r>      block: <R | M3^2 | S4 ...> A=<a> [zstar=<plus>,<minus>]
///   ld: full | zero
HamiltonianSpec parse_spec(const std::string& text);

/// Canonical text: fixed statement order, sorted terms, %.17g coefficients.
std::string serialize(const HamiltonianSpec& spec);

/// Parses one block label such as "M3^2" or "S4" (and "R").
JordanType parse_type_label(const std::string& label, std::size_t dim_a, std::size_t plus,
                            std::size_t minus);

}  // namespace dla
