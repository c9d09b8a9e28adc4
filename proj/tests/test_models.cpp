#include <doctest.h>

#include "dla/models.hpp"
#include "oracles.hpp"

using namespace dla;

TEST_CASE("internal order puts E first, both reversed") {
  HamiltonianSpec s;
  s.site_dims = {2, 3, 4, 5};
  s.s_sites = {0, 2};
  CHECK(internal_order(s) == std::vector<std::size_t>{3, 1, 2, 0});
  const SpaceLayout lay = internal_layout(s);
  CHECK(lay.e_dims() == std::vector<std::size_t>{5, 3});
  CHECK(lay.s_dims() == std::vector<std::size_t>{4, 2});
}

TEST_CASE("xx_prime matrix") {
  const Operator h = hamiltonian(xx_prime());
  CHECK(h.is_hermitian(1e-14));
  // internal order (site 2, site 1, site 0)
  const Mat x = pauli_x(), y = pauli_y(), i2 = eye(2);
  const Mat want = oracle::kron(oracle::kron(i2, x), x) + oracle::kron(oracle::kron(i2, y), y) +
                   oracle::kron(oracle::kron(x, x), i2);
  CHECK(frobenius_residual(h.matrix(), want) < 1e-14);
  CHECK(drift_generator(xx_prime()).is_skew_hermitian(1e-14));
}

TEST_CASE("xx chain commutes with total parity") {
  const HamiltonianSpec s = xx_chain(4, {1.0, 0.8, 1.3}, {0.0, 0.0, 0.0, 0.0}, 0.0);
  const Operator h = hamiltonian(s);
  Mat parity = eye(1);
  for (int k = 0; k < 4; ++k) parity = oracle::kron(parity, pauli_z());
  CHECK((h.matrix() * parity - parity * h.matrix()).norm() < 1e-13);
  CHECK(s.terms.size() == 6);
  CHECK_THROWS(xx_chain(3, {1.0}, {0.0, 0.0, 0.0}, 0.0));
}

TEST_CASE("gamma = 1 drops the YY couplings") {
  const HamiltonianSpec s = xx_chain(3, {1.0, 1.0}, {0.0, 0.5, 0.0}, 1.0);
  CHECK(s.terms.size() == 3);
}

TEST_CASE("random drift is reproducible") {
  const HamiltonianSpec a = random_drift({2, 3}, {0}, 42, 2);
  const HamiltonianSpec b = random_drift({2, 3}, {0}, 42, 2);
  const HamiltonianSpec c = random_drift({2, 3}, {0}, 43, 2);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  // weight 1: 3 + 8, weight 2: 3 * 8
  CHECK(a.terms.size() == 35);
  CHECK(random_drift({2, 3}, {0}, 42, 1).terms.size() == 11);
  CHECK(hamiltonian(a).is_hermitian(1e-13));
}

TEST_CASE("counter rng") {
  CounterRng r(0);
  CounterRng s(0);
  for (int i = 0; i < 10; ++i) CHECK(r.next_u64() == s.next_u64());
  CounterRng u(1);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = u.gaussian();
    mean += g;
    var += g * g;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
  CounterRng w(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = w.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}

TEST_CASE("expand_random uses the spec seed first") {
  HamiltonianSpec s;
  s.site_dims = {2, 2};
  s.s_sites = {0};
  s.random_locality = 2;
  s.seed = 5;
  const HamiltonianSpec e = expand_random(s, 99);
  CHECK_FALSE(e.random_locality.has_value());
  CHECK(e.terms == random_drift({2, 2}, {0}, 5, 2).terms);
  s.seed.reset();
  CHECK(expand_random(s, 99).terms == random_drift({2, 2}, {0}, 99, 2).terms);
}
