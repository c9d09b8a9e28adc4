#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dla {

/// Tensor-factor layout of H_E (x) H_S.
///
/// Factors are stored in flattened-index order with every E factor ahead of
/// every S factor; the last `s_count` factors make up H_S. A layout with no
/// S factors is "plain" and describes a single space (operators on H_E alone,
/// canonical A (x) Q coordinates, ...).
class SpaceLayout {
 public:
  SpaceLayout() = default;
  SpaceLayout(std::vector<std::size_t> factor_dims, std::size_t s_count);

  static SpaceLayout plain(std::vector<std::size_t> dims);
  static SpaceLayout bipartite(const std::vector<std::size_t>& e_dims,
                               const std::vector<std::size_t>& s_dims);

  const std::vector<std::size_t>& factor_dims() const { return factor_dims_; }
  std::size_t factor_count() const { return factor_dims_.size(); }
  std::size_t s_count() const { return s_count_; }
  std::vector<std::size_t> s_factors() const;
  std::vector<std::size_t> e_dims() const;
  std::vector<std::size_t> s_dims() const;

  bool is_bipartite() const { return s_count_ > 0; }
  std::size_t dim_e() const;
  std::size_t dim_s() const;
  std::size_t dim_total() const { return dim_e() * dim_s(); }

  /// Plain layout over the E factors only.
  SpaceLayout e_layout() const { return plain(e_dims()); }

  /// Layout with `dims` appended to H_S (ancilla expansion).
  SpaceLayout with_s_appended(const std::vector<std::size_t>& dims) const;

  std::string to_string() const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  std::vector<std::size_t> factor_dims_;
  std::size_t s_count_ = 0;
};

/// Layout of a Kronecker product a (x) b. When `a` is plain, the result keeps
/// b's S factors; when `a` already has S factors, every factor of `b` joins H_S.
SpaceLayout concat(const SpaceLayout& a, const SpaceLayout& b);

}  // namespace dla
