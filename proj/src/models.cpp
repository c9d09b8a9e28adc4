#include "dla/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dla {

namespace {

std::vector<Term> sorted_terms(std::vector<Term> t) {
  auto key = [](const Term& x) {
    std::string s;
    for (const auto& sym : x.symbols) s += sym.token() + " ";
    return s;
  };
  std::stable_sort(t.begin(), t.end(), [&](const Term& a, const Term& b) {
    const auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a.coefficient < b.coefficient;
  });
  return t;
}

// Non-identity symbols of one d-level site, in hermitian_traceless_basis order.
std::vector<PauliSymbol> site_symbols(std::size_t d) {
  std::vector<PauliSymbol> out;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t q = k + 1; q < d; ++q) out.push_back(PauliSymbol::x(k, q));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t q = k + 1; q < d; ++q) out.push_back(PauliSymbol::y(k, q));
  for (std::size_t k = 0; k + 1 < d; ++k) out.push_back(PauliSymbol::z(k, k + 1));
  return out;
}

}  // namespace

bool HamiltonianSpec::operator==(const HamiltonianSpec& o) const {
  return site_dims == o.site_dims && s_sites == o.s_sites && name == o.name &&
         source == o.source && random_locality == o.random_locality && seed == o.seed &&
         sorted_terms(terms) == sorted_terms(o.terms) &&
         structure.has_value() == o.structure.has_value() &&
         (!structure || (structure->regime == o.structure->regime &&
                         structure->ld_full == o.structure->ld_full &&
                         structure->blocks.size() == o.structure->blocks.size() &&
                         std::equal(structure->blocks.begin(), structure->blocks.end(),
                                    o.structure->blocks.begin(),
                                    [](const DeclaredBlock& a, const DeclaredBlock& b) {
                                      return descriptor(a.jordan_type()) ==
                                                 descriptor(b.jordan_type()) &&
                                             a.type.has_value() == b.type.has_value();
                                    })));
}

std::vector<std::size_t> internal_order(const HamiltonianSpec& spec) {
  std::vector<std::size_t> e, s;
  for (std::size_t i = spec.site_dims.size(); i-- > 0;) {
    const bool in_s = std::find(spec.s_sites.begin(), spec.s_sites.end(), i) != spec.s_sites.end();
    (in_s ? s : e).push_back(i);
  }
  e.insert(e.end(), s.begin(), s.end());
  return e;
}

SpaceLayout internal_layout(const HamiltonianSpec& spec) {
  std::vector<std::size_t> dims;
  for (auto i : internal_order(spec)) dims.push_back(spec.site_dims[i]);
  return SpaceLayout(dims, spec.s_sites.size());
}

Operator hamiltonian(const HamiltonianSpec& spec) {
  if (spec.random_locality) {
    throw std::invalid_argument("hamiltonian: random spec must be expanded first");
  }
  const SpaceLayout layout = internal_layout(spec);
  const auto order = internal_order(spec);
  const auto d = static_cast<Eigen::Index>(layout.dim_total());
  Mat h = Mat::Zero(d, d);
  for (const auto& t : spec.terms) {
    if (t.symbols.size() != spec.site_dims.size()) {
      throw std::invalid_argument("hamiltonian: term length does not match site count");
    }
    PauliString ps;
    for (auto i : order) ps.symbols.push_back(t.symbols[i]);
    h += t.coefficient * ps.matrix(layout.factor_dims());
  }
  return {layout, h};
}

Operator drift_generator(const HamiltonianSpec& spec) {
  const Operator h = hamiltonian(spec);
  return h.with_matrix(kI * h.matrix());
}

HamiltonianSpec xx_chain(std::size_t n, const std::vector<double>& c,
                         const std::vector<double>& b, double gamma) {
  if (n < 2) throw std::invalid_argument("xx_chain: N must be >= 2");
  if (c.size() != n - 1) throw std::invalid_argument("xx_chain: c needs N-1 entries");
  if (b.size() != n) throw std::invalid_argument("xx_chain: b needs N entries");
  HamiltonianSpec s;
  s.site_dims.assign(n, 2);
  s.s_sites = {0};
  s.name = "xx_chain";
  s.source = "xx_chain N=" + std::to_string(n);
  auto pair = [&](std::size_t k, PauliSymbol p) {
    std::vector<PauliSymbol> sym(n, PauliSymbol::id());
    sym[k] = p;
    sym[k + 1] = p;
    return sym;
  };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double cx = 0.5 * c[k] * (1.0 + gamma);
    const double cy = 0.5 * c[k] * (1.0 - gamma);
    if (cx != 0.0) s.terms.push_back({cx, pair(k, PauliSymbol::x())});
    if (cy != 0.0) s.terms.push_back({cy, pair(k, PauliSymbol::y())});
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (b[k] == 0.0) continue;
    std::vector<PauliSymbol> sym(n, PauliSymbol::id());
    sym[k] = PauliSymbol::z();
    s.terms.push_back({b[k], sym});
  }
  return s;
}

HamiltonianSpec xx_prime() {
  HamiltonianSpec s;
  s.site_dims = {2, 2, 2};
  s.s_sites = {0};
  s.name = "xx_prime";
  s.source = "xx_prime";
  const auto I = PauliSymbol::id(), X = PauliSymbol::x(), Y = PauliSymbol::y();
  s.terms = {{1.0, {X, X, I}}, {1.0, {Y, Y, I}}, {1.0, {I, X, X}}};
  return s;
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

HamiltonianSpec random_drift(const std::vector<std::size_t>& site_dims,
                             const std::vector<std::size_t>& s_sites, std::uint64_t seed,
                             std::optional<std::size_t> locality) {
  HamiltonianSpec s;
  s.site_dims = site_dims;
  s.s_sites = s_sites;
  s.name = "random";
  s.source = "random_drift seed=" + std::to_string(seed);
  const std::size_t n = site_dims.size();
  const std::size_t loc = locality.value_or(n);
  std::vector<std::vector<PauliSymbol>> per_site;
  for (auto d : site_dims) {
    auto syms = site_symbols(d);
    syms.insert(syms.begin(), PauliSymbol::id());
    per_site.push_back(std::move(syms));
  }
  CounterRng rng(seed);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    // odometer, last site fastest
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++idx[pos] < per_site[pos].size()) break;
      idx[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
    const auto w = static_cast<std::size_t>(std::count_if(idx.begin(), idx.end(),
                                                          [](std::size_t i) { return i != 0; }));
    if (w == 0 || w > loc) continue;
    Term t;
    t.coefficient = rng.gaussian();
    for (std::size_t i = 0; i < n; ++i) t.symbols.push_back(per_site[i][idx[i]]);
    s.terms.push_back(std::move(t));
  }
  return s;
}

HamiltonianSpec expand_random(const HamiltonianSpec& spec, std::uint64_t default_seed) {
  if (!spec.random_locality) return spec;
  HamiltonianSpec out = random_drift(spec.site_dims, spec.s_sites,
                                     spec.seed.value_or(default_seed), spec.random_locality);
  out.name = spec.name.empty() ? out.name : spec.name;
  out.structure = spec.structure;
  out.warnings = spec.warnings;
  return out;
}

}  // namespace dla
