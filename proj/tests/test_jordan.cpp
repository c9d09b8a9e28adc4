#include <doctest.h>

#include <algorithm>

#include "dla/canonical.hpp"
#include "dla/jordan.hpp"
#include "dla/pauli.hpp"
#include "oracles.hpp"

using namespace dla;

namespace {

OperatorSpace conjugated(const OperatorSpace& s, const Mat& u) {
  const SpaceLayout lay = SpaceLayout::plain({static_cast<std::size_t>(u.rows())});
  OperatorSpace out(lay, s.hermiticity());
  for (const auto& b : s.basis()) out.insert(Operator(lay, u * b.matrix() * u.adjoint()));
  return out;
}

OperatorSpace direct_sum(const std::vector<OperatorSpace>& parts) {
  std::size_t d = 0;
  for (const auto& p : parts) d += p.dim();
  const SpaceLayout lay = SpaceLayout::plain({d});
  OperatorSpace out(lay, Hermiticity::Hermitian);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (const auto& b : p.basis()) {
      Mat m = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      m.block(off, off, p.dim(), p.dim()) = b.matrix();
      out.insert(Operator(lay, m));
    }
    off += p.dim();
  }
  return out;
}

std::vector<TypeDescriptor> descriptors(const Classification& c) {
  std::vector<TypeDescriptor> out;
  for (const auto& b : c.blocks) out.push_back(descriptor(b.type));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("canonical sets have the textbook dimensions") {
  CHECK(canonical_jordan(JordanType::real(3)).rank() == 1);
  CHECK(canonical_jordan(JordanType::matrix(3, 1, 1)).rank() == 6);
  CHECK(canonical_jordan(JordanType::matrix(3, 2, 1, 1, 0)).rank() == 9);
  CHECK(canonical_jordan(JordanType::matrix(3, 4, 1)).rank() == 15);
  for (std::size_t n : {3u, 4u, 5u, 6u}) CHECK(canonical_jordan(JordanType::spin(n, 1)).rank() == n);
  const JordanType s4 = JordanType::spin(4, 2, 1, 1);
  CHECK(s4.block_dim() == 4);
  CHECK(s4.label() == "S4");
}

TEST_CASE("companion relations for canonical types") {
  for (const auto& t : {JordanType::real(2), JordanType::matrix(3, 1, 1), JordanType::matrix(4, 2, 1),
                        JordanType::matrix(3, 4, 1), JordanType::spin(3, 1), JordanType::spin(4, 2, 1, 1),
                        JordanType::spin(5, 1), JordanType::spin(6, 1)}) {
    const CompanionSets cs = companion_sets(t);
    const CompanionReport r = verify_companion_relations(cs.J, cs.Jbar, cs.Jhat);
    for (const auto& c : r.checks) {
      INFO(t.label() << ": " << c.name << " residual " << c.residual);
      CHECK(c.holds);
    }
    CHECK(r.pass);
    CHECK(pseudo_ideal(cs.J).rank() == sum(cs.Jhat, cs.Jbar).rank());
    CHECK(hermitian_commutant(cs.J).rank() == cs.Jhat.rank());
  }
}

TEST_CASE("primed set is closed under both products") {
  const JordanType t = JordanType::spin(4, 2, 1, 1);
  const OperatorSpace p = canonical_primed(t);
  const OperatorSpace J = canonical_jordan(t);
  CHECK(is_subspace(J, p, 1e-10));
  for (const auto& x : p.basis()) {
    for (const auto& y : p.basis()) {
      CHECK(p.contains(anticommutator(x, y), 1e-9));
      CHECK(p.contains(kI * commutator(x, y), 1e-9));
    }
  }
}

TEST_CASE("direct sums under random unitaries") {
  const std::vector<std::vector<JordanType>> cases{
      {JordanType::spin(4, 1, 1, 0), JordanType::matrix(3, 1, 1)},
      {JordanType::real(2), JordanType::spin(5, 1)},
      {JordanType::real(1), JordanType::real(1)},
      {JordanType::spin(4, 2, 1, 1), JordanType::matrix(3, 2, 1, 1, 0)},
  };
  std::uint64_t seed = 400;
  for (const auto& types : cases) {
    std::vector<OperatorSpace> parts;
    std::vector<TypeDescriptor> want;
    for (const auto& t : types) {
      parts.push_back(canonical_jordan(t));
      want.push_back(descriptor(t));
    }
    std::sort(want.begin(), want.end());
    const OperatorSpace J0 = direct_sum(parts);
    const OperatorSpace J = conjugated(J0, oracle::random_unitary(J0.dim(), seed++));
    const JordanFrame f = build_frame(J);
    CHECK(frame_residuals(f).max() < 1e-8);
    const Classification c = classify(f, J);
    CHECK(c.projector_residual < 1e-8);
    CHECK(c.dimension_audit < 0.5);
    CHECK(descriptors(c) == want);
    for (const auto& b : c.blocks) CHECK(canonical_isometry(f, b, J).residual < 1e-8);
  }
}

TEST_CASE("canonical inputs give basis-aligned isometries") {
  const JordanType t = JordanType::spin(5, 1);
  const OperatorSpace J = canonical_jordan(t);
  const JordanFrame f = build_frame(J);
  const Classification c = classify(f, J);
  REQUIRE(c.blocks.size() == 1);
  const CanonicalIsometry iso = canonical_isometry(f, c.blocks[0], J);
  CHECK(iso.residual < 1e-10);
  CHECK(frobenius_residual(iso.U, eye(4)) < 1e-10);
}

TEST_CASE("Z* sign convention") {
  Mat z = -pauli_z();
  std::size_t plus = 0, minus = 0;
  normalize_zstar(z, &plus, &minus);
  CHECK(plus == 1);
  CHECK(minus == 1);
  CHECK(z(0, 0).real() > 0.0);
  Mat m = -eye(3);
  m(2, 2) = 1.0;
  CHECK(normalize_zstar(m, &plus, &minus) == -1.0);
  CHECK(plus == 2);
}

TEST_CASE("spectral clusters") {
  Mat h = Mat::Zero(4, 4);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0 + 1e-12;
  h(2, 2) = 3.0;
  h(3, 3) = -2.0;
  const auto cl = spectral_clusters(h, 1e-8);
  REQUIRE(cl.size() == 3);
  std::size_t total = 0;
  for (const auto& c : cl) total += static_cast<std::size_t>(c.vectors.cols());
  CHECK(total == 4);
}

TEST_CASE("Clifford intertwiner targets anticommute") {
  const auto g = clifford_targets(1, 2);
  REQUIRE(g.size() == 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Mat a = g[i] * g[j] + g[j] * g[i];
      CHECK(frobenius_residual(a, i == j ? Mat(2.0 * eye(4)) : Mat(Mat::Zero(4, 4))) < 1e-14);
    }
  }
}
