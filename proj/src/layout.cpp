#include "dla/layout.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dla {

namespace {

std::size_t product(std::vector<std::size_t>::const_iterator first,
                    std::vector<std::size_t>::const_iterator last) {
  return std::accumulate(first, last, std::size_t{1}, std::multiplies<>());
}

}  // namespace

SpaceLayout::SpaceLayout(std::vector<std::size_t> factor_dims, std::size_t s_count)
    : factor_dims_(std::move(factor_dims)), s_count_(s_count) {
  if (factor_dims_.empty()) {
    throw std::invalid_argument("layout needs at least one factor");
  }
  for (auto d : factor_dims_) {
    if (d == 0) throw std::invalid_argument("factor dimensions must be positive");
  }
  if (s_count_ > factor_dims_.size()) {
    throw std::invalid_argument("more S factors than factors");
  }
  if (s_count_ > 0 && dim_s() < 2) {
    throw std::invalid_argument("dim H_S must be at least 2");
  }
}

SpaceLayout SpaceLayout::plain(std::vector<std::size_t> dims) {
  return SpaceLayout(std::move(dims), 0);
}

SpaceLayout SpaceLayout::bipartite(const std::vector<std::size_t>& e_dims,
                                   const std::vector<std::size_t>& s_dims) {
  if (s_dims.empty()) throw std::invalid_argument("bipartite layout needs S factors");
  std::vector<std::size_t> all(e_dims);
  if (all.empty()) all.push_back(1);  // trivial environment
  all.insert(all.end(), s_dims.begin(), s_dims.end());
  return SpaceLayout(std::move(all), s_dims.size());
}

std::vector<std::size_t> SpaceLayout::s_factors() const {
  std::vector<std::size_t> idx(s_count_);
  std::iota(idx.begin(), idx.end(), factor_dims_.size() - s_count_);
  return idx;
}

std::vector<std::size_t> SpaceLayout::e_dims() const {
  return {factor_dims_.begin(), factor_dims_.end() - static_cast<std::ptrdiff_t>(s_count_)};
}

std::vector<std::size_t> SpaceLayout::s_dims() const {
  return {factor_dims_.end() - static_cast<std::ptrdiff_t>(s_count_), factor_dims_.end()};
}

std::size_t SpaceLayout::dim_e() const {
  return product(factor_dims_.begin(),
                 factor_dims_.end() - static_cast<std::ptrdiff_t>(s_count_));
}

std::size_t SpaceLayout::dim_s() const {
  return product(factor_dims_.end() - static_cast<std::ptrdiff_t>(s_count_),
                 factor_dims_.end());
}

SpaceLayout SpaceLayout::with_s_appended(const std::vector<std::size_t>& dims) const {
  if (!is_bipartite()) throw std::invalid_argument("cannot extend H_S of a plain layout");
  std::vector<std::size_t> all(factor_dims_);
  all.insert(all.end(), dims.begin(), dims.end());
  return SpaceLayout(std::move(all), s_count_ + dims.size());
}

std::string SpaceLayout::to_string() const {
  std::ostringstream os;
  os << '(';
  const std::size_t n_e = factor_dims_.size() - s_count_;
  for (std::size_t i = 0; i < factor_dims_.size(); ++i) {
    if (i > 0) os << (i == n_e ? "|" : ",");
    else if (n_e == 0) os << '|';
    os << factor_dims_[i];
  }
  os << ')';
  return os.str();
}

SpaceLayout concat(const SpaceLayout& a, const SpaceLayout& b) {
  std::vector<std::size_t> all(a.factor_dims());
  all.insert(all.end(), b.factor_dims().begin(), b.factor_dims().end());
  const std::size_t s = a.is_bipartite() ? a.s_count() + b.factor_count() : b.s_count();
  return SpaceLayout(std::move(all), s);
}

}  // namespace dla
