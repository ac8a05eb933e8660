#include <doctest.h>

#include "horlab/hormander_sos.hpp"
#include "support.hpp"

using namespace horlab;
using namespace horlab::testing;

TEST_CASE("field symbols") {
  auto s = field_symbols(degenerate_system(1, 1));
  REQUIRE(s.size() == 3);
  CHECK(s[0].to_string() == "xi1");
  CHECK(s[1].to_string() == "x1^3*xi2");
  CHECK(s[2].to_string() == "x1*x2*xi2");
}

TEST_CASE("conversion to the second-order operator") {
  auto g = to_hor_operator(grushin());
  CHECK(g.a(0, 0) == Polynomial::constant(2, 1));
  CHECK(g.a(0, 1).is_zero());
  CHECK(g.a(1, 1) == monomial({2, 0}));
  for (const auto& b : g.b()) CHECK(b.is_zero());
  CHECK(g.c().is_zero());

  auto e = to_hor_operator(degenerate_system(1, 1));
  CHECK(e.a(1, 1) == monomial({6, 0}) + monomial({2, 2}));
  CHECK(e.a(0, 0) == Polynomial::constant(2, 1));
  CHECK(e.a(0, 1).is_zero());

  VectorFieldSystem one(1, {VectorField{{Polynomial::constant(1, 1)}}});
  CHECK(to_hor_operator(one).a(0, 0) == Polynomial::constant(1, 1));
}

TEST_CASE("principal symbol of the conversion is the sum of squared field symbols") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto sys = random_system(rng);
    WeightedSymbol sum(2);
    for (const auto& s : field_symbols(sys)) sum = sum + s * s;
    CHECK(principal_symbol(to_hor_operator(sys)) == sum);
  }
}

TEST_CASE("expanding the squares yields first-order terms") {
  // D = −i∂: (y D_y)² = y² D_y² − i y D_y, so b₂ = −y in the i·b·D slot
  VectorFieldSystem sys(2, {VectorField{{Polynomial(2), monomial({0, 1})}}});
  auto op = to_hor_operator(sys);
  CHECK(op.a(1, 1) == monomial({0, 2}));
  CHECK(op.b()[1] == -monomial({0, 1}));
  CHECK(op.b()[0].is_zero());
  // drift X0 = x X1 adds x·y to b_2
  VectorFieldSystem drift(2, {VectorField{{Polynomial(2), monomial({0, 1})}}},
                          std::vector<Polynomial>{monomial({1, 0})}, Polynomial::constant(2, 3));
  auto d = to_hor_operator(drift);
  CHECK(d.b()[1] == monomial({1, 1}) - monomial({0, 1}));
  CHECK(d.c() == Polynomial::constant(2, 3));
}

TEST_CASE("bracket of field symbols is the symbol of the commutator") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = random_system(rng);
    const auto& f = sys.fields();
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        auto bracket = poisson_bracket(field_symbol(f[i]), field_symbol(f[j]));
        CHECK(bracket == field_symbol(commutator(f[i], f[j])));
      }
    }
  }
}

TEST_CASE("lie types") {
  auto r = lie_type_at(degenerate_system(1, 1), rho());
  REQUIRE(r.is_finite());
  CHECK(r.finite().type == 4);

  auto r2 = lie_type_at(degenerate_system(2, 1), rho());
  REQUIRE(r2.is_finite());
  CHECK(r2.finite().type == 6);

  auto g = lie_type_at(grushin(), rho());
  REQUIRE(g.is_finite());
  CHECK(g.finite().type == 2);
  CHECK(g.finite().witness.letters == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("drift does not affect the lie type") {
  auto base = degenerate_system(1, 1);
  VectorFieldSystem drifted(2, base.fields(), std::vector<Polynomial>{monomial({1, 0}), Polynomial(2), Polynomial(2)});
  CHECK(lie_type_at(drifted, rho()).type() == lie_type_at(base, rho()).type());
}

TEST_CASE("type comparison examples") {
  auto e = compare_types(degenerate_system(1, 1), rho());
  CHECK(e.conclusive);
  CHECK(e.lie.type() == 4u);
  CHECK(e.family.type() == 6u);
  CHECK(e.dp1_holds == true);
  CHECK(e.dp2_holds == true);

  auto g = compare_types(grushin(), rho());
  CHECK(g.lie.type() == 2u);
  CHECK(g.family.type() == 2u);
  CHECK(g.dp2_holds == true);

  VectorFieldSystem lap(2, {VectorField{{Polynomial::constant(2, 1), Polynomial(2)}},
                            VectorField{{Polynomial(2), Polynomial::constant(2, 1)}}});
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    CotangentPoint p{{random_rational(rng), random_rational(rng)}, {random_nonzero(rng), random_rational(rng)}};
    auto c = compare_types(lap, p, {3});
    CHECK(c.lie.type() == 1u);
    CHECK(c.family.type() == 1u);
  }
}

TEST_CASE("comparison is inconclusive when a type exceeds the cap") {
  auto c = compare_types(degenerate_system(1, 1), rho(), {5});
  CHECK_FALSE(c.conclusive);
  CHECK_FALSE(c.dp1_holds);
  CHECK_FALSE(c.dp2_holds);
}

TEST_CASE("type comparisons hold on random systems") {
  Rng rng(44);
  int conclusive = 0;
  // most random systems never reach the η direction at the origin
  for (int trial = 0; trial < 300; ++trial) {
    auto c = compare_types(random_system(rng), rho(), {6});
    if (!c.conclusive) continue;
    ++conclusive;
    CHECK(*c.dp1_holds);
    CHECK(*c.dp2_holds);
  }
  CHECK(conclusive > 10);
}
