#include "horlab/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "horlab/error.hpp"

namespace horlab {

namespace {

using cplx = std::complex<double>;

std::vector<int> dims_of(const Grid& g) {
  std::vector<int> d;
  for (const auto& a : g) d.push_back(static_cast<int>(a.count));
  return d;
}

std::size_t spectrum_size(const Grid& g) {
  std::size_t s = g.back().count / 2 + 1;
  for (std::size_t a = 0; a + 1 < g.size(); ++a) s *= g[a].count;
  return s;
}

std::vector<cplx> forward(const Grid& g, std::span<const double> samples) {
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<cplx> out(spectrum_size(g));
  auto dims = dims_of(g);
  fftw_plan p = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), in.data(),
                                  reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  return out;
}

std::vector<double> inverse(const Grid& g, std::vector<cplx> spec) {
  std::vector<double> out(grid_size(g));
  auto dims = dims_of(g);
  fftw_plan p = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(),
                                  reinterpret_cast<fftw_complex*>(spec.data()), out.data(),
                                  FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

// Signed frequency index of spectrum slot j on an axis with count samples.
long frequency(std::size_t j, std::size_t count) {
  return j <= count / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(count);
}

// Calls fn(flat spectrum index, per-axis signed frequency) over the r2c layout.
template <class F>
void for_each_mode(const Grid& g, F&& fn) {
  std::size_t total = spectrum_size(g);
  std::size_t n = g.size();
  std::vector<long> freq(n);
  std::size_t last = g.back().count / 2 + 1;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    freq[n - 1] = static_cast<long>(rest % last);
    rest /= last;
    for (std::size_t a = n - 1; a-- > 0;) {
      freq[a] = frequency(rest % g[a].count, g[a].count);
      rest /= g[a].count;
    }
    fn(flat, freq);
  }
}

void require_fits(const Grid& g, const Stencil& k) {
  if (k.dim() != g.size()) throw DimensionError("kernel and grid dimensions differ");
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (2 * k.half_width[a] + 1 > g[a].count) {
      throw PreconditionError("kernel is wider than the periodic grid");
    }
  }
}

// Kernel wrapped onto the full periodic grid.
std::vector<double> embed(const Grid& g, const Stencil& k) {
  require_fits(g, k);
  std::size_t n = g.size();
  std::vector<double> out(grid_size(g), 0.0);
  std::vector<std::size_t> ext(n);
  for (std::size_t a = 0; a < n; ++a) ext[a] = 2 * k.half_width[a] + 1;
  for (std::size_t s = 0; s < k.weights.size(); ++s) {
    std::size_t rest = s, flat = 0;
    std::vector<std::size_t> idx(n);
    for (std::size_t a = n; a-- > 0;) {
      idx[a] = rest % ext[a];
      rest /= ext[a];
    }
    for (std::size_t a = 0; a < n; ++a) {
      long off = static_cast<long>(idx[a]) - static_cast<long>(k.half_width[a]);
      long c = static_cast<long>(g[a].count);
      flat = flat * g[a].count + static_cast<std::size_t>((off % c + c) % c);
    }
    out[flat] += k.weights[s];
  }
  return out;
}

}  // namespace

double Stencil::mass() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

Stencil sample_kernel(const Grid& grid, double radius,
                      const std::function<double(std::span<const double>)>& f) {
  validate_grid(grid);
  Stencil k;
  std::size_t total = 1;
  for (const auto& a : grid) {
    k.half_width.push_back(static_cast<std::size_t>(std::floor(radius / a.h())));
    total *= 2 * k.half_width.back() + 1;
  }
  k.weights.resize(total);
  std::size_t n = grid.size();
  std::vector<double> x(n);
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t rest = s;
    for (std::size_t a = n; a-- > 0;) {
      std::size_t ext = 2 * k.half_width[a] + 1;
      x[a] = (static_cast<double>(rest % ext) - static_cast<double>(k.half_width[a])) * grid[a].h();
      rest /= ext;
    }
    k.weights[s] = f(x);
  }
  double m = k.mass();
  if (!(m > 0)) throw PreconditionError("kernel has no mass on this grid");
  for (auto& w : k.weights) w /= m;
  return k;
}

GridFunction convolve_direct(const GridFunction& f, const Stencil& k, Execution exec) {
  const Grid& g = f.axes();
  require_fits(g, k);
  std::size_t n = g.size();
  if (n > 8) throw DimensionError("direct convolution supports at most 8 axes");
  GridFunction out(g);
  std::vector<std::size_t> ext(n);
  for (std::size_t a = 0; a < n; ++a) ext[a] = 2 * k.half_width[a] + 1;
  const long total = static_cast<long>(f.size());
  const bool parallel = exec == Execution::Parallel;

#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < total; ++i) {
    auto idx = f.unflatten(static_cast<std::size_t>(i));
    double acc = 0;
    for (std::size_t s = 0; s < k.weights.size(); ++s) {
      std::size_t rest = s, flat = 0;
      std::size_t src[8];
      for (std::size_t a = n; a-- > 0;) {
        long off = static_cast<long>(rest % ext[a]) - static_cast<long>(k.half_width[a]);
        rest /= ext[a];
        long c = static_cast<long>(g[a].count);
        src[a] = static_cast<std::size_t>(((static_cast<long>(idx[a]) - off) % c + c) % c);
      }
      for (std::size_t a = 0; a < n; ++a) flat = flat * g[a].count + src[a];
      acc += k.weights[s] * f[flat];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

GridFunction convolve_fft(const GridFunction& f, std::span<const Stencil> kernels) {
  const Grid& g = f.axes();
  auto spec = forward(g, f.samples());
  for (const auto& k : kernels) {
    auto ks = forward(g, embed(g, k));
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= ks[i];
  }
  return GridFunction(g, inverse(g, std::move(spec)));
}

GridFunction convolve_fft_powers(const GridFunction& f, std::span<const Stencil> kernels,
                                 std::span<const unsigned> powers) {
  if (kernels.size() != powers.size()) throw DimensionError("one power per kernel");
  const Grid& g = f.axes();
  auto spec = forward(g, f.samples());
  for (std::size_t j = 0; j < kernels.size(); ++j) {
    if (powers[j] == 0) continue;
    auto ks = forward(g, embed(g, kernels[j]));
    for (std::size_t i = 0; i < spec.size(); ++i) {
      spec[i] *= std::pow(ks[i], static_cast<int>(powers[j]));
    }
  }
  return GridFunction(g, inverse(g, std::move(spec)));
}

std::vector<GridFunction> spectral_derivatives(const GridFunction& f,
                                               std::span<const MultiIndex> alphas,
                                               const SpectralOptions& options) {
  const Grid& g = f.axes();
  std::size_t n = g.size();
  auto base = forward(g, f.samples());
  if (options.noise_floor > 0) {
    double peak = 0;
    for (const auto& c : base) peak = std::max(peak, std::abs(c));
    double floor = options.noise_floor * peak;
    std::vector<long> cut(n, 0);
    for_each_mode(g, [&](std::size_t flat, const std::vector<long>& freq) {
      if (std::abs(base[flat]) <= floor) return;
      for (std::size_t a = 0; a < n; ++a) cut[a] = std::max(cut[a], std::labs(freq[a]));
    });
    for_each_mode(g, [&](std::size_t flat, const std::vector<long>& freq) {
      for (std::size_t a = 0; a < n; ++a) {
        if (std::labs(freq[a]) > cut[a]) {
          base[flat] = 0;
          return;
        }
      }
    });
  }
  std::vector<double> two_pi_over_len(n);
  for (std::size_t a = 0; a < n; ++a) {
    two_pi_over_len[a] = 2 * std::numbers::pi / (static_cast<double>(g[a].count) * g[a].h());
  }
  std::vector<GridFunction> out;
  for (const auto& alpha : alphas) {
    if (alpha.size() != n) throw DimensionError("derivative order has the wrong dimension");
    if (alpha.is_zero()) {
      out.push_back(f);
      continue;
    }
    auto spec = base;
    for_each_mode(g, [&](std::size_t flat, const std::vector<long>& freq) {
      cplx m = 1;
      for (std::size_t a = 0; a < n; ++a) {
        if (alpha[a] == 0) continue;
        bool nyquist = g[a].count % 2 == 0 &&
                       std::labs(freq[a]) == static_cast<long>(g[a].count / 2);
        if (nyquist && alpha[a] % 2 == 1) {
          m = 0;
          break;
        }
        cplx ik(0, static_cast<double>(freq[a]) * two_pi_over_len[a]);
        m *= std::pow(ik, static_cast<int>(alpha[a]));
      }
      spec[flat] *= m;
    });
    out.emplace_back(g, inverse(g, std::move(spec)));
  }
  return out;
}

GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha,
                                 const SpectralOptions& options) {
  return std::move(spectral_derivatives(f, std::span(&alpha, 1), options).front());
}

GridFunction central_difference(const GridFunction& f, std::size_t axis) {
  const Grid& g = f.axes();
  if (axis >= g.size()) throw DimensionError("axis out of range");
  GridFunction out(g);
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < g.size(); ++a) stride *= g[a].count;
  std::size_t count = g[axis].count;
  double inv = 1.0 / (2 * g[axis].h());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t j = (i / stride) % count;
    std::size_t base = i - j * stride;
    std::size_t up = base + ((j + 1) % count) * stride;
    std::size_t down = base + ((j + count - 1) % count) * stride;
    out[i] = (f[up] - f[down]) * inv;
  }
  return out;
}

}  // namespace horlab
