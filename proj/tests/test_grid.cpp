#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "horlab/convolution.hpp"
#include "horlab/error.hpp"
#include "horlab/grid.hpp"

using namespace horlab;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction sample(const Grid& g, const std::function<double(std::span<const double>)>& f) {
  GridFunction out(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(out.point(i));
  return out;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Stencil random_stencil(std::mt19937_64& rng, std::vector<std::size_t> w) {
  Stencil s{w, {}};
  std::size_t count = 1;
  for (auto v : w) count *= 2 * v + 1;
  std::uniform_real_distribution<double> u(0, 1);
  double sum = 0;
  for (std::size_t i = 0; i < count; ++i) sum += s.weights.emplace_back(u(rng));
  for (auto& v : s.weights) v /= sum;
  return s;
}

}  // namespace

TEST_CASE("grid axes keep exact metadata") {
  auto a = GridAxis::periodic(Rational(-1), Rational(1), 16);
  CHECK(a.spacing == Rational(1, 8));
  CHECK(a.coordinate(13) == doctest::Approx(5.0 / 8));
  CHECK(a.last() == doctest::Approx(7.0 / 8));
  auto b = GridAxis::uniform(Rational(0), Rational(1, 3), 4);
  CHECK(b.last() == doctest::Approx(1.0));
  CHECK_THROWS_AS(validate_grid({GridAxis::uniform(0, 1, 1)}), PreconditionError);
  CHECK_THROWS_AS(validate_grid({GridAxis::uniform(0, -1, 4)}), PreconditionError);
  CHECK_THROWS_AS(validate_grid({}), PreconditionError);
}

TEST_CASE("grid function indexing") {
  Grid g{GridAxis::periodic(0, 1, 4), GridAxis::periodic(0, 2, 5)};
  GridFunction f(g);
  CHECK(f.size() == 20);
  CHECK(grid_size(g) == 20);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = f.unflatten(i);
    CHECK(f.flatten(idx) == i);
  }
  auto p = f.point(f.flatten(std::vector<std::size_t>{1, 3}));
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(1.2));
  CHECK(f.cell_volume() == doctest::Approx(0.1));
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(3)), DimensionError);
}

TEST_CASE("grid function integral, max and finiteness") {
  Grid g{GridAxis::periodic(0, 1, 64)};
  auto f = sample(g, [](auto x) { return std::sin(2 * kPi * x[0]) + 1; });
  CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.max_abs() == doctest::Approx(2.0));
  f[3] = std::nan("");
  CHECK_THROWS_AS(f.require_finite(), PreconditionError);
}

TEST_CASE("csv export has a header and one row per sample") {
  Grid g{GridAxis::periodic(0, 1, 2), GridAxis::periodic(0, 1, 2)};
  GridFunction f(g, {1, 2, 3, 4});
  std::ostringstream os;
  f.write_csv(os);
  CHECK(os.str() == "x1,x2,value\n0,0,1\n0,0.5,2\n0.5,0,3\n0.5,0.5,4\n");
}

TEST_CASE("spectral derivatives of trigonometric polynomials are exact") {
  Grid g{GridAxis::periodic(0, 1, 64)};
  auto f = sample(g, [](auto x) { return std::sin(2 * kPi * x[0]) + 0.5 * std::cos(6 * kPi * x[0]); });
  auto d1 = spectral_derivative(f, MultiIndex{1});
  auto e1 = sample(g, [](auto x) {
    return 2 * kPi * std::cos(2 * kPi * x[0]) - 3 * kPi * std::sin(6 * kPi * x[0]);
  });
  CHECK(max_diff(d1, e1) < 1e-10);
  auto d3 = spectral_derivative(f, MultiIndex{3});
  auto e3 = sample(g, [](auto x) {
    return -std::pow(2 * kPi, 3) * std::cos(2 * kPi * x[0]) + 0.5 * std::pow(6 * kPi, 3) * std::sin(6 * kPi * x[0]);
  });
  CHECK(max_diff(d3, e3) < 1e-7 * e3.max_abs());

  Grid g2{GridAxis::periodic(0, 1, 32), GridAxis::periodic(0, 1, 16)};
  auto h = sample(g2, [](auto x) { return std::sin(2 * kPi * x[0]) * std::cos(4 * kPi * x[1]); });
  auto dxy = spectral_derivative(h, MultiIndex{1, 1});
  auto exy = sample(g2, [](auto x) { return -8 * kPi * kPi * std::cos(2 * kPi * x[0]) * std::sin(4 * kPi * x[1]); });
  CHECK(max_diff(dxy, exy) < 1e-9);
  CHECK(max_diff(spectral_derivative(h, MultiIndex{0, 0}), h) == 0);
}

TEST_CASE("several spectral derivatives share one transform") {
  Grid g{GridAxis::periodic(0, 1, 32)};
  auto f = sample(g, [](auto x) { return std::exp(std::sin(2 * kPi * x[0])); });
  std::vector<MultiIndex> alphas{MultiIndex{1}, MultiIndex{2}, MultiIndex{4}};
  auto all = spectral_derivatives(f, alphas, {0});
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    CHECK(max_diff(all[i], spectral_derivative(f, alphas[i], {0})) < 1e-9 * all[i].max_abs());
  }
}

TEST_CASE("noise floor removes roundoff but keeps resolved modes") {
  Grid g{GridAxis::periodic(0, 1, 256)};
  auto f = sample(g, [](auto x) { return std::sin(2 * kPi * x[0]); });
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1e-15, 1e-15);
  for (auto& v : f.samples()) v += u(rng);
  auto raw = spectral_derivative(f, MultiIndex{6}, {0});
  auto filtered = spectral_derivative(f, MultiIndex{6});
  auto exact = sample(g, [](auto x) { return -std::pow(2 * kPi, 6) * std::sin(2 * kPi * x[0]); });
  CHECK(max_diff(filtered, exact) < 1e-8 * exact.max_abs());
  CHECK(max_diff(raw, exact) > max_diff(filtered, exact));
}

TEST_CASE("central difference converges at second order") {
  for (std::size_t n : {64u, 128u}) {
    Grid g{GridAxis::periodic(0, 1, n)};
    auto f = sample(g, [](auto x) { return std::sin(2 * kPi * x[0]); });
    auto e = sample(g, [](auto x) { return 2 * kPi * std::cos(2 * kPi * x[0]); });
    double err = max_diff(central_difference(f, 0), e);
    double h = 1.0 / n;
    CHECK(err == doctest::Approx(std::pow(2 * kPi, 3) * h * h / 6).epsilon(0.01));
  }
}

TEST_CASE("direct convolution: serial and parallel agree bit for bit") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-1, 1);
  Grid g{GridAxis::periodic(0, 1, 40), GridAxis::periodic(0, 1, 24)};
  GridFunction f(g);
  for (auto& v : f.samples()) v = u(rng);
  auto k = random_stencil(rng, {3, 2});
  auto s = convolve_direct(f, k, Execution::Serial);
  auto p = convolve_direct(f, k, Execution::Parallel);
  CHECK(max_diff(s, p) == 0);

  // oracle: the periodic sum written out directly
  double expect = 0;
  for (long i = -3; i <= 3; ++i) {
    for (long j = -2; j <= 2; ++j) {
      std::size_t fi = (5 - i + 40) % 40, fj = (1 - j + 24) % 24;
      expect += k.weights[(i + 3) * 5 + (j + 2)] * f[fi * 24 + fj];
    }
  }
  CHECK(s[5 * 24 + 1] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("FFT convolution matches the direct sum") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(-1, 1);
  Grid g{GridAxis::periodic(0, 1, 64)};
  GridFunction f(g);
  for (auto& v : f.samples()) v = u(rng);
  auto a = random_stencil(rng, {4}), b = random_stencil(rng, {2});
  std::vector<Stencil> ks{a, b};
  auto direct = convolve_direct(convolve_direct(f, a, Execution::Serial), b, Execution::Serial);
  CHECK(max_diff(convolve_fft(f, ks), direct) < 1e-13);

  std::vector<unsigned> powers{3, 2};
  GridFunction d = f;
  for (int i = 0; i < 3; ++i) d = convolve_direct(d, a, Execution::Serial);
  for (int i = 0; i < 2; ++i) d = convolve_direct(d, b, Execution::Serial);
  CHECK(max_diff(convolve_fft_powers(f, ks, powers), d) < 1e-13);
}

TEST_CASE("sampled kernels have unit mass") {
  Grid g{GridAxis::periodic(-1, 1, 200), GridAxis::periodic(-1, 1, 100)};
  auto s = sample_kernel(g, 0.1, [](auto x) { return 1.0 - std::abs(x[0]) - std::abs(x[1]); });
  CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.half_width == std::vector<std::size_t>{10, 5});
  Grid tiny{GridAxis::periodic(0, 1, 4)};
  auto wide = sample_kernel(Grid{GridAxis::periodic(0, 1, 64)}, 0.3, [](auto) { return 1.0; });
  GridFunction f(tiny);
  CHECK_THROWS_AS(convolve_direct(f, wide, Execution::Serial), PreconditionError);
}
