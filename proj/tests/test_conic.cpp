#include <doctest.h>

#include <cmath>

#include "horlab/conic.hpp"
#include "horlab/error.hpp"

using namespace horlab;

namespace {

ConicParams line_params(unsigned N) { return ConicParams{{1.0}, 1.0, 3, N}; }

// Built once: the N = 16 table takes a moment.
const ConicSymbol& line_symbol() {
  static const ConicSymbol s = build_conic_symbol(line_params(16), 4);
  return s;
}

const ConicSymbol& plane_symbol() {
  static const ConicSymbol s = build_conic_symbol(ConicParams{{1.0, 0.0}, 0.5, 1, 1}, 2);
  return s;
}

double at(const ConicSymbol& s, std::vector<double> xi) { return s.value(xi); }

}  // namespace

TEST_CASE("conic parameters are validated") {
  CHECK_THROWS_AS((ConicParams{{0.0, 0.0}, 1, 3, 16}.validate()), PreconditionError);
  CHECK_THROWS_AS((ConicParams{{}, 1, 3, 16}.validate()), PreconditionError);
  CHECK_THROWS_AS((ConicParams{{1.0}, 0, 3, 16}.validate()), PreconditionError);
  CHECK_THROWS_AS((ConicParams{{1.0}, 1, 3, 0}.validate()), PreconditionError);
}

TEST_CASE("inner cutoff parameters") {
  auto p = conic_inner_params(3, 16, 2);
  CHECK(p.sigma.shape == Region::Shape::Ball);
  CHECK(p.sigma.radius == 0.5);
  CHECK(p.r == doctest::Approx(0.2));
  // Θ_{0,N} vanishes at |ζ| ≥ 1/2 + (1 + M/2) r₀ = 1
  CHECK(0.5 + (1 + 1.5) * p.r == doctest::Approx(1));
  auto g = conic_table_grid(3, 16, 1);
  CHECK(g[0].coordinate(0) == -2);
  CHECK(g[0].last() < 2);
}

TEST_CASE("conic symbol examples on the line") {
  const auto& s = line_symbol();
  CHECK(at(s, {32.0}) == doctest::Approx(1).epsilon(1e-12));  // along ξ₀ at |ξ| = 2N
  CHECK(at(s, {4.0}) == 0);                                   // |ξ| = N/4
  CHECK(at(s, {-32.0}) == 0);                                 // opposite direction
  CHECK(at(s, {0.0}) == 0);
  for (double xi : {16.0, 20.0, 100.0, 1000.0}) CHECK(at(s, {xi}) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("conic symbol examples in the plane") {
  const auto& s = plane_symbol();
  CHECK(at(s, {2.0, 0.0}) == doctest::Approx(1).epsilon(1e-10));
  CHECK(at(s, {0.25, 0.0}) == 0);
  // unit directions at distance r = 1/2 from (1,0): cos θ = 1 − r²/2
  double c = 1 - 0.125, sn = std::sqrt(1 - c * c);
  for (double len : {1.0, 3.0, 10.0}) {
    CHECK(std::abs(at(s, {len * c, len * sn})) < 1e-12);
    CHECK(std::abs(at(s, {len * c, -len * sn})) < 1e-12);
  }
}

TEST_CASE("derivatives agree with finite differences of the value") {
  const auto& s = line_symbol();
  const double h = 1e-3;
  for (double xi : {9.0, 10.5, 13.0, 14.7}) {
    std::vector<double> p{xi}, m{xi - h}, q{xi + h};
    double fd1 = (s.value(q) - s.value(m)) / (2 * h);
    CHECK(s.derivative(p, MultiIndex{1}) == doctest::Approx(fd1).epsilon(1e-5));
    double fd2 = (s.value(q) - 2 * s.value(p) + s.value(m)) / (h * h);
    CHECK(s.derivative(p, MultiIndex{2}) == doctest::Approx(fd2).epsilon(1e-3));
    std::vector<double> m2{xi - h}, q2{xi + h};
    double fd3 = (s.derivative(q2, MultiIndex{2}) - s.derivative(m2, MultiIndex{2})) / (2 * h);
    CHECK(s.derivative(p, MultiIndex{3}) == doctest::Approx(fd3).epsilon(1e-4));
  }
}

TEST_CASE("mixed derivatives in the plane agree with finite differences") {
  const auto& s = plane_symbol();
  // the symbol is steep here, so central differences are Richardson-extrapolated;
  // the mixed derivative agrees to the table's own accuracy, about 1e-3 relative
  auto richardson = [](auto&& d, double h) { return (4 * d(h / 2) - d(h)) / 3; };
  for (auto p : std::vector<std::vector<double>>{{0.8, 0.3}, {1.2, -0.4}, {0.7, 0.1}, {2.0, 0.6}}) {
    auto v = [&](double dx, double dy) { return s.value(std::vector<double>{p[0] + dx, p[1] + dy}); };
    double dx = richardson([&](double h) { return (v(h, 0) - v(-h, 0)) / (2 * h); }, 2e-4);
    double dy = richardson([&](double h) { return (v(0, h) - v(0, -h)) / (2 * h); }, 2e-4);
    double dxy = richardson(
        [&](double h) { return (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4 * h * h); }, 1e-3);
    double tol = 1e-4 * (1 + std::abs(dx) + std::abs(dy));
    CHECK(std::abs(s.derivative(p, MultiIndex{1, 0}) - dx) < tol);
    CHECK(std::abs(s.derivative(p, MultiIndex{0, 1}) - dy) < tol);
    CHECK(std::abs(s.derivative(p, MultiIndex{1, 1}) - dxy) < 5e-3 * (1 + std::abs(dxy)));
  }
}

TEST_CASE("sampling and cone properties") {
  const auto& s = line_symbol();
  auto theta = s.sample(conic_xi_grid(16, 1, 4097));
  auto props = conic_properties(s, theta);
  CHECK(props.holds(1e-8));
  CHECK(props.inside_samples > 0);
  CHECK(props.outside_samples > 0);
  CHECK_THROWS_AS(s.sample(Grid{GridAxis::periodic(-8, 8, 64)}), PreconditionError);
  CHECK_THROWS_AS(s.derivative(std::vector<double>{20.0}, MultiIndex{5}), PreconditionError);
}

TEST_CASE("plane symbol cone properties") {
  const auto& s = plane_symbol();
  auto theta = s.sample(conic_xi_grid(1, 2, 129));
  CHECK(conic_properties(s, theta).holds(1e-8));
}

TEST_CASE("bound report and uniform constant") {
  const auto& s = line_symbol();
  auto rep = verify_conic_bound(s, conic_xi_grid(16, 1, 4097), 4);
  REQUIRE(rep.entries.size() == 5);
  CHECK(rep.entries[0].measured <= 1 + 1e-12);
  for (const auto& e : rep.entries) {
    CHECK(std::pow(rep.c_fit, static_cast<double>(e.alpha.total()) + 1) >= e.measured * (1 - 1e-12));
  }
  CHECK(rep.c_fit >= 1);
  CHECK(std::isfinite(rep.growth_rate));

  ConicReport a{16, {}, 10, 1, 0}, b{32, {}, 11, 1, 0}, c{64, {}, 30, 1, 0};
  std::vector<ConicReport> flat{a, b}, growing{a, b, c};
  auto u = fit_uniform_constant(flat);
  CHECK(u.c == 11);
  CHECK(u.drift == doctest::Approx(1.1));
  CHECK(u.pass);
  CHECK_FALSE(fit_uniform_constant(growing).pass);
}
