#include <doctest.h>

#include "dla/spec_io.hpp"

using namespace dla;

TEST_CASE("inline xx_prime spec equals the builder") {
  HamiltonianSpec p = parse_spec("sites: [2,2,2]; S: [0]; term: 1.0 XXI; term: 1.0 YYI; term: 1.0 IXX");
  HamiltonianSpec want = xx_prime();
  p.name = want.name;
  p.source = want.source;
  CHECK(p == want);
  CHECK(frobenius_residual(hamiltonian(p).matrix(), hamiltonian(want).matrix()) < 1e-15);
}

TEST_CASE("round trip through the serializer") {
  const std::vector<std::string> docs{
      "name: t\nsites: [3, 2]\nS: [1]\nterm: 0.25 [X0:2 Z]\nterm: -1 [P1 Y]\n",
      "sites: [2,2]; S: [0]; random: 2; seed: 12",
      "sites: [2,2,2]; S: [0]; term: 1 XXI; term: 1 YYI; term: 1 IXX\n"
      "structure: regime2; ld: full; block: S4 A=2 zstar=1,1",
      "sites: [2,2,2]; S: [0]; term: 0.1 IXZ\nstructure: regime3\nblock: B=1 R=2\nblock: B=2 R=1",
  };
  for (const auto& d : docs) {
    const HamiltonianSpec s = parse_spec(d);
    const std::string text = serialize(s);
    CHECK(parse_spec(text) == s);
    CHECK(serialize(parse_spec(text)) == text);
  }
  const HamiltonianSpec r = random_drift({2, 3}, {0}, 8, 2);
  CHECK(parse_spec(serialize(r)) == r);
}

TEST_CASE("term order does not matter") {
  const auto a = parse_spec("sites: [2,2]; S: [0]; term: 1 XX; term: 2 ZI");
  const auto b = parse_spec("sites: [2,2]; S: [0]; term: 2 ZI; term: 1 XX");
  CHECK(a == b);
  CHECK(serialize(a) == serialize(b));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_spec("sites: [2,2]\nS: [0]\nterm: 1.0 XQ\n");
    FAIL("expected a SpecError");
  } catch (const SpecError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 11);
  }
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0]; term: 1.0 XXX"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0,1]"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2]; S: [0]"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0]; term: 1 [X0:2 I]"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0]; term: 1 XX; random: 2"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0]; colour: red"), SpecError);
  CHECK_THROWS_AS(parse_spec("sites: [2,2]; S: [0]; term: abc XX"), SpecError);
}

TEST_CASE("empty term list warns") {
  const HamiltonianSpec s = parse_spec("sites: [2,2]\nS: [0]\n# nothing else\n");
  REQUIRE(s.warnings.size() == 1);
  CHECK(s.warnings[0].find("zero Hamiltonian") != std::string::npos);
  CHECK(hamiltonian(s).matrix().norm() == 0.0);
}

TEST_CASE("type labels") {
  CHECK(parse_type_label("R", 3, 0, 0).tag == JordanTag::R);
  const JordanType m = parse_type_label("M3^2", 2, 1, 1);
  CHECK(m.tag == JordanTag::M);
  CHECK(m.gamma == 3);
  CHECK(m.k == 2);
  CHECK(m.zstar_minus == 1);
  CHECK(parse_type_label("S5", 1, 0, 0).n == 5);
  CHECK_THROWS(parse_type_label("M3^3", 1, 0, 0));
}
