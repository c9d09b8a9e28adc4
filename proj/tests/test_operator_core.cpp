#include <doctest.h>

#include <random>

#include "dla/linalg.hpp"
#include "dla/pauli.hpp"
#include "oracles.hpp"

using namespace dla;

TEST_CASE("layout bookkeeping") {
  const SpaceLayout lay = SpaceLayout::bipartite({2, 3}, {2});
  CHECK(lay.dim_e() == 6);
  CHECK(lay.dim_s() == 2);
  CHECK(lay.dim_total() == 12);
  CHECK(lay.e_dims() == std::vector<std::size_t>{2, 3});
  CHECK(lay.s_dims() == std::vector<std::size_t>{2});
  const SpaceLayout ex = lay.with_s_appended({3});
  CHECK(ex.dim_s() == 6);
  CHECK(ex.dim_e() == 6);
  CHECK_FALSE(SpaceLayout::plain({4}).is_bipartite());
  CHECK(concat(SpaceLayout::plain({2}), lay).dim_e() == 12);
}

TEST_CASE("kron agrees with elementwise oracle") {
  std::mt19937_64 rng(3);
  const Mat a = oracle::random_hermitian(2, rng);
  const Mat b = oracle::random_hermitian(3, rng) * kI;
  CHECK(frobenius_residual(kron(a, b), oracle::kron(a, b)) < 1e-14);
  const Operator t = tensor(Operator(SpaceLayout::plain({2}), a), Operator(SpaceLayout::plain({3}), b));
  CHECK(t.dim() == 6);
}

TEST_CASE("pack and unpack are inverse isometries") {
  std::mt19937_64 rng(5);
  const Mat h = oracle::random_hermitian(4, rng);
  const Mat g = oracle::random_hermitian(4, rng);
  for (auto kind : {Hermiticity::Hermitian, Hermiticity::SkewHermitian}) {
    const Mat x = kind == Hermiticity::Hermitian ? h : Mat(kI * h);
    const Mat y = kind == Hermiticity::Hermitian ? g : Mat(kI * g);
    const RealVec v = pack(x, kind);
    CHECK(v.size() == 16);
    CHECK(frobenius_residual(unpack(v, 4, kind), x) < 1e-14);
    const double ip = (x.adjoint() * y).trace().real() / 4.0;
    CHECK(v.dot(pack(y, kind)) == doctest::Approx(ip).epsilon(1e-12));
  }
}

TEST_CASE("hs norm and inner product") {
  const SpaceLayout lay = SpaceLayout::plain({3});
  CHECK(Operator::identity(lay).hs_norm() == doctest::Approx(1.0));
  const Operator x(lay, pauli_x(3, 0, 2));
  CHECK(hs_inner(x, x).real() == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(hs_inner(x, Operator(lay, pauli_z(3, 0, 1)))) < 1e-15);
}

TEST_CASE("generalized Paulis") {
  CHECK(frobenius_residual(pauli_x() * pauli_y(), kI * pauli_z()) < 1e-15);
  const auto basis = hermitian_traceless_basis(3);
  CHECK(basis.size() == 8);
  for (const auto& b : basis) {
    CHECK(std::abs(b.trace()) < 1e-15);
    CHECK(frobenius_residual(b, b.adjoint()) < 1e-15);
  }
  PauliString s{{PauliSymbol::x(), PauliSymbol::id(), PauliSymbol::proj(1)}, {2.0, 0.0}};
  CHECK(s.to_string().find("X") != std::string::npos);
  const Mat m = s.matrix({2, 2, 3});
  CHECK(frobenius_residual(m, 2.0 * oracle::kron(oracle::kron(pauli_x(), eye(2)), ket_bra(3, 1, 1))) <
        1e-15);
}

TEST_CASE("operator space Gram-Schmidt") {
  const OperatorSpace su3 = su_basis(3);
  CHECK(su3.rank() == 8);
  const RealMat g = su3.gram();
  CHECK((g - RealMat::Identity(8, 8)).norm() < 1e-12);
  OperatorSpace s = su3;
  CHECK_FALSE(s.insert(su3[0] * 2.0 + su3[3] * 0.5));
  CHECK(s.rank() == 8);
  // insertion order fixes the basis bit for bit
  const OperatorSpace again = su_basis(3);
  for (std::size_t i = 0; i < 8; ++i) CHECK(again[i].matrix() == su3[i].matrix());
  CHECK(full_unitary_algebra(SpaceLayout::plain({3}), true).rank() == 9);
  CHECK(is_subspace(su3, full_unitary_algebra(SpaceLayout::plain({3}), true), 1e-12));
  CHECK(same_span(times_i(times_i(su3)), su3, 1e-12));
}

TEST_CASE("control block and generators") {
  const SpaceLayout lay = SpaceLayout::bipartite({2}, {3});
  const OperatorSpace c = control_block(lay);
  CHECK(c.rank() == 8);
  const auto gens = control_generators(lay);
  CHECK(gens.size() == 4);
  for (const auto& g : gens) CHECK(c.contains(g, 1e-12));
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(11);
  const Mat a = oracle::random_hermitian(3, rng);
  const Mat b = oracle::random_hermitian(2, rng);
  const Mat pt = partial_trace_s(oracle::kron(a, b), 3, 2);
  CHECK(frobenius_residual(pt, a * b.trace()) < 1e-12);
  const Mat w = pauli_z();
  CHECK(frobenius_residual(partial_trace_s_weighted(oracle::kron(a, b), w, 3), a * (b * w).trace()) <
        1e-12);
}

TEST_CASE("null spaces") {
  RealMat a = RealMat::Zero(3, 5);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 0) = 1.0;
  const NullSpace ns = null_space(a, 1e-9);
  CHECK(ns.basis.cols() == 3);
  CHECK((a * ns.basis).norm() < 1e-12);
  // tall matrix with many exact zeros (the path that broke BDCSVD)
  RealMat big = RealMat::Zero(200, 100);
  for (int i = 0; i < 40; ++i) big(i, i) = 1.0 + i;
  CHECK(null_space(big, 1e-9).basis.cols() == 60);
}

TEST_CASE("commutant basis matches the stacked real oracle") {
  const Mat x = oracle::kron(pauli_x(), eye(2));
  const Mat z = oracle::kron(pauli_z(), eye(2));
  const CommutantBasis cb = commutant_basis({x, z}, 1e-9);
  CHECK(cb.basis.size() == 4);
  CHECK(oracle::commutant_dim({Mat(kI * x), Mat(kI * z)}, 4) == 4);
}

TEST_CASE("intersection of spans") {
  const SpaceLayout lay = SpaceLayout::plain({2});
  const OperatorSpace a = OperatorSpace::span(
      lay, Hermiticity::SkewHermitian, {Operator(lay, kI * pauli_x()), Operator(lay, kI * pauli_y())});
  const OperatorSpace b = OperatorSpace::span(
      lay, Hermiticity::SkewHermitian, {Operator(lay, kI * pauli_y()), Operator(lay, kI * pauli_z())});
  const OperatorSpace c = intersect(a, b, 1e-9);
  CHECK(c.rank() == 1);
  CHECK(c.contains(Operator(lay, kI * pauli_y()), 1e-12));
  CHECK(sum(a, b).rank() == 3);
}
