#include "horlab/cutoff.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "horlab/error.hpp"

namespace horlab {

namespace {

constexpr double kR2 = Bump::kRadius * Bump::kRadius;

// Area of the unit sphere in ℝ^{k+1}; S_0 = 2 counts the two points of S⁰.
double sphere_area(std::size_t k) {
  double d = static_cast<double>(k + 1);
  return 2 * std::pow(std::numbers::pi, d / 2) / std::tgamma(d / 2);
}

// ∫_{ℝ^d} exp(−1/(R² − |y|²)) dy
double profile_integral(std::size_t d) {
  if (d == 0) return std::exp(-1 / kR2);
  boost::math::quadrature::tanh_sinh<double> q;
  double radial = q.integrate(
      [d](double t) {
        double s = kR2 - t * t;
        return s > 0 ? std::exp(-1 / s) * std::pow(t, static_cast<double>(d - 1)) : 0.0;
      },
      0.0, Bump::kRadius);
  return sphere_area(d - 1) * radial;
}

double min_spacing(const Grid& g) {
  double h = g.front().h();
  for (const auto& a : g) h = std::min(h, a.h());
  return h;
}

}  // namespace

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty()) throw DimensionError("box corners must match");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw PreconditionError("box has lo > hi");
  }
  Region r;
  r.shape = Shape::Box;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

Region Region::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw DimensionError("ball needs a center");
  if (!(radius >= 0)) throw PreconditionError("ball radius must be nonnegative");
  Region r;
  r.shape = Shape::Ball;
  r.center = std::move(center);
  r.radius = radius;
  return r;
}

double Region::distance(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("point and region dimensions differ");
  double s = 0;
  if (shape == Shape::Box) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = std::max({lo[i] - x[i], 0.0, x[i] - hi[i]});
      s += d * d;
    }
    return std::sqrt(s);
  }
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
  return std::max(std::sqrt(s) - radius, 0.0);
}

std::vector<double> Region::lower() const {
  if (shape == Shape::Box) return lo;
  std::vector<double> out(center);
  for (auto& v : out) v -= radius;
  return out;
}

std::vector<double> Region::upper() const {
  if (shape == Shape::Box) return hi;
  std::vector<double> out(center);
  for (auto& v : out) v += radius;
  return out;
}

std::string Region::to_string() const {
  std::ostringstream os;
  auto list = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  };
  if (shape == Shape::Box) {
    os << "box(";
    list(lo);
    os << ";";
    list(hi);
  } else {
    os << "ball(";
    list(center);
    os << ";" << radius;
  }
  os << ")";
  return os.str();
}

void CutoffParams::validate() const {
  if (N < 1) throw PreconditionError("N must be at least 1");
  if (M < 1) throw PreconditionError("M must be at least 1");
  if (!(r > 0)) throw PreconditionError("r must be positive");
  if (sigma.dim() == 0) throw PreconditionError("sigma is empty");
}

double Bump::profile(std::span<const double> x, double delta) {
  double s = 0;
  for (double v : x) s += (v / delta) * (v / delta);
  double d = kR2 - s;
  return d > 0 ? std::exp(-1 / d) : 0.0;
}

double Bump::normalization() const { return 1 / profile_integral(dim); }

double Bump::derivative_l1() const {
  // ψ is radially decreasing, so along each line parallel to the x₁ axis
  // ∫|∂₁ψ| = 2ψ at the crossing with {x₁ = 0}.
  return 2 * normalization() * profile_integral(dim - 1);
}

GridFunction build_mollifier(double delta, const Grid& grid) {
  if (!(delta > 0)) throw PreconditionError("delta must be positive");
  GridFunction psi(grid);
  double radius = delta * Bump::kRadius;
  if (radius / min_spacing(grid) < 8) {
    throw PreconditionError("grid does not resolve the mollifier support with 8 samples");
  }
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = Bump::profile(psi.point(i), delta);
  double mass = psi.integral();
  if (!(mass > 0)) throw PreconditionError("grid does not contain the mollifier support");
  for (auto& v : psi.samples()) v /= mass;
  return psi;
}

double eh_dilation(unsigned M) { return 1.0 / (M + 2.0); }

double eh_c0(std::size_t dim, unsigned M) { return Bump{dim}.derivative_l1() / eh_dilation(M); }

GridFunction build_eh_cutoff(const CutoffParams& params, const Grid& grid, ConvolutionMethod method) {
  params.validate();
  validate_grid(grid);
  std::size_t n = params.sigma.dim();
  if (grid.size() != n) throw DimensionError("grid and sigma dimensions differ");

  const double kappa = eh_dilation(params.M);
  const double small = 2 * kappa * params.r / params.N;
  const double big = 2 * kappa * params.r;
  double h = min_spacing(grid);
  if (small * Bump::kRadius / h < 8) {
    throw PreconditionError("grid too coarse to resolve 2r/N: need spacing <= " +
                            std::to_string(small * Bump::kRadius / 8));
  }
  double reach = (1 + params.M / 2.0) * params.r;
  auto lo = params.sigma.lower(), hi = params.sigma.upper();
  for (std::size_t a = 0; a < n; ++a) {
    double margin = 2 * grid[a].h();
    if (grid[a].coordinate(0) > lo[a] - reach - margin || grid[a].last() < hi[a] + reach + margin) {
      throw PreconditionError("grid does not cover sigma fattened by (1+M/2)r plus margin");
    }
  }

  GridFunction chi(grid);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    chi[i] = params.sigma.distance(chi.point(i)) < params.r / 2 ? 1.0 : 0.0;
  }
  auto kernel = [&](double delta) {
    return sample_kernel(grid, delta * Bump::kRadius,
                         [delta](std::span<const double> x) { return Bump::profile(x, delta); });
  };
  Stencil ks = kernel(small), kb = kernel(big);

  if (method == ConvolutionMethod::Fft) {
    std::vector<Stencil> ker{ks, kb};
    std::vector<unsigned> pw{params.N, params.M};
    return convolve_fft_powers(chi, ker, pw);
  }
  Execution exec = method == ConvolutionMethod::DirectParallel ? Execution::Parallel : Execution::Serial;
  GridFunction phi = std::move(chi);
  for (unsigned j = 0; j < params.M; ++j) phi = convolve_direct(phi, kb, exec);
  for (unsigned j = 0; j < params.N; ++j) phi = convolve_direct(phi, ks, exec);
  return phi;
}

CutoffProperties cutoff_properties(const GridFunction& phi, const CutoffParams& params) {
  CutoffProperties p;
  p.min_value = phi[0];
  p.max_value = phi[0];
  double reach = (1 + params.M / 2.0) * params.r;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double v = phi[i];
    p.min_value = std::min(p.min_value, v);
    p.max_value = std::max(p.max_value, v);
    double d = params.sigma.distance(phi.point(i));
    if (d == 0) p.max_deviation_on_sigma = std::max(p.max_deviation_on_sigma, std::abs(v - 1));
    if (d > reach) p.max_outside = std::max(p.max_outside, std::abs(v));
  }
  return p;
}

bool BoundReport::passed() const {
  return !entries.empty() &&
         std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.pass; });
}

bool BoundReport::resolved() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.resolved; });
}

double eh_bound(double c0, const CutoffParams& params, unsigned order) {
  unsigned excess = order > params.M ? order - params.M : 0;
  return std::pow(c0 / (2 * params.r), order) * std::pow(static_cast<double>(params.N), excess);
}

BoundReport verify_eh_bound(const GridFunction& phi, const CutoffParams& params, unsigned alpha_max) {
  params.validate();
  if (phi.dim() != params.sigma.dim()) throw DimensionError("cutoff and sigma dimensions differ");
  phi.require_finite();
  BoundReport rep;
  rep.c0 = eh_c0(phi.dim(), params.M);
  unsigned top = std::min(params.N, alpha_max);
  auto alphas = multi_indices_up_to(phi.dim(), top);
  auto derivs = spectral_derivatives(phi, alphas);
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> where;
  for (std::size_t i = 0; i < alphas.size(); ++i) where.emplace(alphas[i], i);

  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const MultiIndex& alpha = alphas[i];
    BoundEntry e;
    e.alpha = alpha;
    e.measured = derivs[i].max_abs();
    e.bound = eh_bound(rep.c0, params, static_cast<unsigned>(alpha.total()));
    if (!alpha.is_zero()) {
      std::size_t axis = 0;
      while (alpha[axis] == 0) ++axis;
      const GridFunction& lower = derivs[where.at(alpha - MultiIndex::unit(alpha.size(), axis))];
      GridFunction cd = central_difference(lower, axis);
      double diff = 0;
      for (std::size_t k = 0; k < cd.size(); ++k) diff = std::max(diff, std::abs(cd[k] - derivs[i][k]));
      e.crosscheck = e.measured > 0 ? diff / e.measured : diff;
      e.resolved = e.crosscheck <= 0.01;
    }
    e.pass = e.resolved && e.measured <= e.bound * (1 + rep.tolerance);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace horlab
