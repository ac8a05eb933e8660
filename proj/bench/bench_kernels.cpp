// Serial reference vs OpenMP for the two parallel kernels, plus the FFT path.
//
//   horlab_bench --benchmark_filter=Bracket
//   OMP_NUM_THREADS=4 horlab_bench

#include <benchmark/benchmark.h>

#include <cmath>

#include "horlab/bracket_engine.hpp"
#include "horlab/convolution.hpp"
#include "horlab/hormander_sos.hpp"
#include "support.hpp"

using namespace horlab;

namespace {

const SymbolFamily& family(unsigned n) {
  static const SymbolFamily one = symbol_family(to_hor_operator(testing::degenerate_system(1, 1)));
  static const SymbolFamily two = symbol_family(to_hor_operator(testing::degenerate_system(2, 1)));
  return n == 1 ? one : two;
}

void BracketSearch(benchmark::State& state, Execution exec) {
  const auto& fam = family(static_cast<unsigned>(state.range(0)));
  TypeOptions options{12, true, exec};
  for (auto _ : state) {
    auto r = type_at(fam, testing::rho(), options);
    benchmark::DoNotOptimize(r);
  }
}

GridFunction bump(std::size_t points) {
  GridFunction f(Grid{GridAxis::periodic(-2, 2, points)});
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = f.point(i)[0];
    f[i] = std::abs(x) < 0.5 ? 1.0 : 0.0;
  }
  return f;
}

Stencil kernel(const Grid& grid, double radius) {
  return sample_kernel(grid, radius, [radius](std::span<const double> x) {
    double t = x[0] / radius;
    return std::abs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0;
  });
}

void DirectConvolution(benchmark::State& state, Execution exec) {
  auto f = bump(static_cast<std::size_t>(state.range(0)));
  auto k = kernel(f.axes(), 0.05);
  for (auto _ : state) {
    auto g = convolve_direct(f, k, exec);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size() * k.weights.size()));
}

void FftConvolution(benchmark::State& state) {
  auto f = bump(static_cast<std::size_t>(state.range(0)));
  std::vector<Stencil> ks{kernel(f.axes(), 0.05)};
  for (auto _ : state) {
    auto g = convolve_fft(f, ks);
    benchmark::DoNotOptimize(g);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BracketSearch, serial, Execution::Serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BracketSearch, parallel, Execution::Parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(DirectConvolution, serial, Execution::Serial)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(DirectConvolution, parallel, Execution::Parallel)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK(FftConvolution)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
