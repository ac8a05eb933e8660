#include <doctest.h>

#include "horlab/error.hpp"
#include "horlab/weighted_symbol.hpp"
#include "support.hpp"

using namespace horlab;
using namespace horlab::testing;

namespace {

// Phase-space variable helpers in dimension 2: x, y, xi, eta.
WeightedSymbol var2(std::size_t slot) {
  return slot < 2 ? WeightedSymbol::variable(2, PhaseVariable::x(slot))
                  : WeightedSymbol::variable(2, PhaseVariable::xi(slot - 2));
}

WeightedSymbol constant(std::size_t dim, const Rational& c) {
  return WeightedSymbol(Polynomial::constant(2 * dim, c));
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  auto x1 = Polynomial::variable(2, 0);
  CHECK((x1 + (-x1)).is_zero());
  auto xi = Polynomial::variable(2, 1);
  CHECK(xi * xi == Polynomial::monomial(MultiIndex{0, 2}, 1));

  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto lhs = (x * x * y + y) * (x * y);
  auto rhs = x.pow(3) * y.pow(2) + x * y.pow(2);
  CHECK(lhs == rhs);
  std::vector<std::string> names{"x", "y"};
  CHECK(lhs.to_string(names) == "x^3*y^2 + x*y^2");
}

TEST_CASE("polynomial operations reject mixed rings") {
  CHECK_THROWS_AS(Polynomial::variable(2, 0) + Polynomial::variable(3, 0), DimensionError);
  CHECK_THROWS_AS(Polynomial::variable(2, 0) * Polynomial::variable(1, 0), DimensionError);
}

TEST_CASE("polynomial ring laws on random inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_polynomial(rng, 3, 4, 5);
    auto q = random_polynomial(rng, 3, 4, 5);
    auto r = random_polynomial(rng, 3, 4, 5);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
    for (const auto& t : (p * q).terms()) CHECK(t.coefficient != 0);
  }
}

TEST_CASE("polynomial derivative, composition, division") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_polynomial(rng, 2, 4, 4);
    auto q = random_polynomial(rng, 2, 4, 4);
    CHECK((p * q).derivative(0) == p.derivative(0) * q + p * q.derivative(0));
    if (!q.is_zero()) {
      auto quotient = (p * q).divide_exact(q);
      REQUIRE(quotient);
      CHECK(*quotient == p);
    }
    // compose with the identity map
    std::vector<Polynomial> id{Polynomial::variable(2, 0), Polynomial::variable(2, 1)};
    CHECK(p.compose(id) == p);
  }
  auto x = Polynomial::variable(1, 0);
  CHECK_FALSE((x * x + Polynomial::constant(1, 1)).divide_exact(x));
}

TEST_CASE("symbol derivative examples") {
  auto xi1 = WeightedSymbol::variable(1, PhaseVariable::xi(0));
  CHECK((xi1 * xi1).derivative(PhaseVariable::xi(0)) == xi1 * Rational(2));

  auto lambda = WeightedSymbol::lambda(1);
  auto x1 = WeightedSymbol::variable(1, PhaseVariable::x(0));
  CHECK((lambda * x1).derivative(PhaseVariable::x(0)) == lambda);

  // (∂λ)·λ = ξ₁ and (∂λ)²(1+ξ₁²) = ξ₁²
  auto d = lambda.derivative(PhaseVariable::xi(0));
  CHECK(d * lambda == xi1);
  CHECK(d * d * WeightedSymbol(WeightedSymbol::weight_square(1)) == xi1 * xi1);

  // x-derivative of a polynomial stays polynomial
  Rng rng(13);
  auto p = WeightedSymbol(random_polynomial(rng, 4, 4, 4));
  CHECK(p.derivative(PhaseVariable::x(1)).odd_part().is_zero());
}

TEST_CASE("lambda squared reduces to the weight") {
  for (std::size_t dim : {1u, 2u, 3u}) {
    auto l = WeightedSymbol::lambda(dim);
    CHECK(l * l == WeightedSymbol(WeightedSymbol::weight_square(dim)));
    CHECK(WeightedSymbol::lambda_power(dim, 3) == l * l * l);
    CHECK(WeightedSymbol::lambda_power(dim, -1) * l == constant(dim, 1));
    CHECK(WeightedSymbol::lambda_power(dim, -2) * WeightedSymbol(WeightedSymbol::weight_square(dim)) ==
          constant(dim, 1));
  }
}

TEST_CASE("quotient consistency: reducing before or after multiplying agrees") {
  Rng rng(14);
  auto w = WeightedSymbol::weight_square(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_polynomial(rng, 4, 2, 3), b = random_polynomial(rng, 4, 2, 3);
    auto c = random_polynomial(rng, 4, 2, 3), d = random_polynomial(rng, 4, 2, 3);
    // (a + bλ)(c + dλ) expanded by hand with λ² = w
    WeightedSymbol lhs = WeightedSymbol(a, b, 0) * WeightedSymbol(c, d, 0);
    WeightedSymbol rhs(a * c + b * d * w, a * d + b * c, 0);
    CHECK(lhs == rhs);
    // a λ^{-2} equals a / w when w divides it
    CHECK(WeightedSymbol(a * w, Polynomial(4), 2) == WeightedSymbol(a));
  }
}

TEST_CASE("canonical form cancels common weight factors") {
  auto w = WeightedSymbol::weight_square(1);
  auto xi = Polynomial::variable(2, 1);
  WeightedSymbol s(w * xi, Polynomial(2), 2);
  CHECK(s.denominator_exponent() == 0);
  CHECK(s == WeightedSymbol(xi));
  WeightedSymbol t(Polynomial(2), w, 1);  // λ^{-1}·w·λ = w
  CHECK(t == WeightedSymbol(w));
}

TEST_CASE("poisson bracket examples") {
  auto xi1 = WeightedSymbol::variable(1, PhaseVariable::xi(0));
  auto x1 = WeightedSymbol::variable(1, PhaseVariable::x(0));
  CHECK(poisson_bracket(xi1, x1) == constant(1, 1));

  Rng rng(15);
  auto q = random_symbol(rng, 2);
  CHECK(poisson_bracket(q, q).is_zero());

  auto x = var2(0), y = var2(1), xi = var2(2), eta = var2(3);
  auto x4 = x * x * x * x, eta2 = eta * eta;
  auto p = x4 * x * eta2 * Rational(6) + x * y * y * eta2 * Rational(2);
  auto expected = x4 * eta2 * Rational(60) + y * y * eta2 * Rational(4);
  CHECK(poisson_bracket(xi * Rational(2), p) == expected);
}

TEST_CASE("bracket of symbols in different dimensions throws") {
  CHECK_THROWS_AS(poisson_bracket(WeightedSymbol::lambda(1), WeightedSymbol::lambda(2)), DimensionError);
}

TEST_CASE("evaluate examples") {
  auto x = var2(0), y = var2(1), xi = var2(2), eta = var2(3);
  auto x2 = x * x;
  auto p0 = xi * xi + x2 * x2 * x2 * eta * eta + x2 * y * y * eta * eta;
  CHECK(p0.evaluate(rho()).is_zero());
  auto l = WeightedSymbol::lambda(2).evaluate(rho());
  CHECK(l.rational_part == 0);
  CHECK(l.radical_part == 1);
  CHECK(l.radicand == 2);
  CHECK(l.to_string() == "sqrt(2)");
  auto v = (xi * Rational(2)).evaluate(CotangentPoint{{0, 0}, {1, 0}});
  CHECK(v.rational_part == 2);
  CHECK(v.radical_part == 0);
}

TEST_CASE("algebraic value zero test is exact") {
  AlgebraicValue v{Rational(-2), Rational(1), Rational(4)};  // -2 + sqrt(4)
  CHECK(v.is_zero());
  AlgebraicValue w{Rational(2), Rational(1), Rational(4)};
  CHECK_FALSE(w.is_zero());
  CHECK(w.sign() == 1);
  AlgebraicValue u{Rational(1), Rational(-1), Rational(2)};
  CHECK(u.sign() == -1);
}

TEST_CASE("evaluate is a ring homomorphism") {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_symbol(rng, 2), q = random_symbol(rng, 2);
    CotangentPoint pt{{random_rational(rng), random_rational(rng)},
                      {random_rational(rng), random_rational(rng)}};
    CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
  }
}

TEST_CASE("homogeneity degree examples") {
  auto x = var2(0), y = var2(1), xi = var2(2), eta = var2(3);
  auto x2 = x * x;
  auto p0 = xi * xi + x2 * x2 * x2 * eta * eta + x2 * y * y * eta * eta;
  CHECK(p0.homogeneity_degree() == 2);
  auto xi1 = WeightedSymbol::variable(1, PhaseVariable::xi(0));
  auto x1 = WeightedSymbol::variable(1, PhaseVariable::x(0));
  CHECK((WeightedSymbol::lambda(1) * x1 * xi1 * Rational(2)).homogeneity_degree() == 2);
  CHECK_FALSE((xi1 + xi1 * xi1).homogeneity_degree());
  CHECK(WeightedSymbol(1).homogeneity_degree() == 1);
  CHECK(WeightedSymbol(1).homogeneity().kind == WeightedSymbol::Homogeneity::Kind::Zero);
}

TEST_CASE("poisson bracket laws on random symbols") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_symbol(rng, 2), q = random_symbol(rng, 2), r = random_symbol(rng, 2);
    auto c = random_rational(rng);
    CHECK(poisson_bracket(p, q) == -poisson_bracket(q, p));
    CHECK(poisson_bracket(p * c + q, r) == poisson_bracket(p, r) * c + poisson_bracket(q, r));
    auto jacobi = poisson_bracket(p, poisson_bracket(q, r)) + poisson_bracket(q, poisson_bracket(r, p)) +
                  poisson_bracket(r, poisson_bracket(p, q));
    CHECK(jacobi.is_zero());
    CHECK(poisson_bracket(p, q * r) == poisson_bracket(p, q) * r + q * poisson_bracket(p, r));
  }
}

TEST_CASE("bracket of homogeneous symbols adds degrees minus one") {
  Rng rng(18);
  int nonzero = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> d(0, 3);
    int d1 = d(rng), d2 = d(rng);
    auto p = random_homogeneous(rng, 2, d1), q = random_homogeneous(rng, 2, d2);
    REQUIRE(p.homogeneity_degree() == d1);
    REQUIRE(q.homogeneity_degree() == d2);
    auto b = poisson_bracket(p, q);
    if (b.is_zero()) continue;
    ++nonzero;
    CHECK(b.homogeneity_degree() == d1 + d2 - 1);
  }
  CHECK(nonzero > 30);
}

TEST_CASE("rendering and hashing are deterministic") {
  Rng a(19), b(19);
  auto p = random_symbol(a, 2), q = random_symbol(b, 2);
  CHECK(p == q);
  CHECK(p.to_string() == q.to_string());
  CHECK(p.hash() == q.hash());
  CHECK(WeightedSymbol::lambda(1).to_string() == "lambda");
}

TEST_CASE("cotangent point parsing") {
  auto p = CotangentPoint::parse("(0, 1/2; 0, -3)");
  CHECK(p.x == std::vector<Rational>{0, Rational(1, 2)});
  CHECK(p.xi == std::vector<Rational>{0, -3});
  CHECK(CotangentPoint::parse(p.to_string()).x == p.x);
  CHECK_THROWS(CotangentPoint::parse("(0, 1; 0)"));
}
