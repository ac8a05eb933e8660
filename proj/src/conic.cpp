#include "horlab/conic.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "horlab/convolution.hpp"
#include "horlab/error.hpp"
#include "horlab/faa_di_bruno.hpp"
#include "horlab/lemma.hpp"

namespace horlab {

namespace {

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Truncated Taylor expansions in n variables up to total order K.
class JetSpace {
 public:
  JetSpace(std::size_t n, unsigned K) : n_(n), K_(K), index_(multi_indices_up_to(n, K)) {
    for (std::size_t i = 0; i < index_.size(); ++i) pos_.emplace(index_[i], i);
    for (std::size_t p = 0; p < index_.size(); ++p) {
      for (std::size_t q = 0; q < index_.size(); ++q) {
        if (index_[p].total() + index_[q].total() <= K_) {
          products_.push_back({p, q, pos_.at(index_[p] + index_[q])});
        }
      }
    }
  }

  std::size_t size() const { return index_.size(); }
  unsigned order() const { return K_; }
  std::size_t position(const MultiIndex& m) const { return pos_.at(m); }

  std::vector<double> constant(double c) const {
    std::vector<double> j(size(), 0.0);
    j[0] = c;
    return j;
  }
  // Jet of x_i at a point with coordinate value.
  std::vector<double> variable(std::size_t i, double value) const {
    auto j = constant(value);
    if (K_ > 0) j[position(MultiIndex::unit(n_, i))] = 1;
    return j;
  }
  std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) const {
    std::vector<double> out(size(), 0.0);
    for (const auto& [p, q, r] : products_) out[r] += a[p] * b[q];
    return out;
  }
  // u^{-1/2} for a jet with positive constant term.
  std::vector<double> rsqrt(const std::vector<double>& u) const {
    double u0 = u[0];
    auto delta = u;
    delta[0] = 0;
    auto out = constant(0);
    auto power = constant(1);
    double binom = 1;
    for (unsigned k = 0; k <= K_; ++k) {
      double c = binom * std::pow(u0, -0.5 - k);
      for (std::size_t i = 0; i < size(); ++i) out[i] += c * power[i];
      power = mul(power, delta);
      binom *= (-0.5 - k) / (k + 1.0);
    }
    return out;
  }
  // D^m f from the Taylor coefficient.
  double derivative(const std::vector<double>& jet, const MultiIndex& m) const {
    return jet[position(m)] * m.factorial().get_d();
  }

 private:
  struct Product {
    std::size_t p, q, r;
  };
  std::size_t n_;
  unsigned K_;
  std::vector<MultiIndex> index_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos_;
  std::vector<Product> products_;
};

// 8-point Lagrange weights at fractional position t ∈ [3, 4) of nodes 0…7.
void lagrange8(double t, double* w) {
  for (int k = 0; k < 8; ++k) {
    double v = 1;
    for (int m = 0; m < 8; ++m) {
      if (m != k) v *= (t - m) / (k - m);
    }
    w[k] = v;
  }
}

}  // namespace

void ConicParams::validate() const {
  if (xi0.empty()) throw PreconditionError("xi0 must be a nonempty vector");
  if (!(norm(xi0) > 0)) throw PreconditionError("xi0 must be nonzero");
  if (!(r > 0)) throw PreconditionError("r must be positive");
  if (M < 1) throw PreconditionError("M must be at least 1");
  if (N < 1) throw PreconditionError("N must be at least 1");
}

CutoffParams conic_inner_params(unsigned M, unsigned N, std::size_t dim) {
  return CutoffParams{Region::ball(std::vector<double>(dim, 0.0), 0.5), 1.0 / (M + 2.0), M, N};
}

Grid conic_table_grid(unsigned M, unsigned N, std::size_t dim) {
  auto inner = conic_inner_params(M, N, dim);
  double radius = Bump::kRadius * eh_dilation(M) * 2 * inner.r / N;
  double per_radius = dim == 1 ? 16 : 8;
  std::size_t count = 16;
  while (4.0 / count > radius / per_radius) count *= 2;
  double total = std::pow(static_cast<double>(count), static_cast<double>(dim));
  if (total > double(1 << 24)) {
    throw PreconditionError("the table grid for this N and dimension exceeds 2^24 samples");
  }
  return Grid(dim, GridAxis::periodic(-2, 2, count));
}

ConicSymbol::ConicSymbol(ConicParams params, const Grid& table_grid, unsigned max_order)
    : params_(std::move(params)), max_order_(max_order) {
  params_.validate();
  std::size_t n = params_.xi0.size();
  if (table_grid.size() != n) throw DimensionError("table grid and xi0 dimensions differ");
  GridFunction theta0 = build_eh_cutoff(conic_inner_params(params_.M, params_.N, n), table_grid);
  orders_ = multi_indices_up_to(n, max_order_);
  tables_ = spectral_derivatives(theta0, orders_);
}

double ConicSymbol::table_value(const MultiIndex& beta, std::span<const double> z) const {
  auto it = std::find(orders_.begin(), orders_.end(), beta);
  if (it == orders_.end()) throw PreconditionError("derivative order above the table's max order");
  const GridFunction& t = tables_[static_cast<std::size_t>(it - orders_.begin())];
  std::size_t n = t.dim();
  std::vector<std::size_t> base(n);
  std::vector<double> w(8 * n);
  for (std::size_t a = 0; a < n; ++a) {
    const GridAxis& ax = t.axis(a);
    double u = (z[a] - ax.origin.get_d()) / ax.h();
    double fl = std::floor(u);
    // Θ_{0,N} vanishes well inside the table, so off-table points are zero.
    if (fl - 3 < 0 || fl + 4 >= static_cast<double>(ax.count)) return 0.0;
    base[a] = static_cast<std::size_t>(fl) - 3;
    lagrange8(u - (fl - 3), &w[8 * a]);
  }
  double acc = 0;
  std::size_t combos = 1;
  for (std::size_t a = 0; a < n; ++a) combos *= 8;
  std::vector<std::size_t> idx(n);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    double wt = 1;
    for (std::size_t a = n; a-- > 0;) {
      std::size_t k = rest % 8;
      rest /= 8;
      idx[a] = base[a] + k;
      wt *= w[8 * a + k];
    }
    acc += wt * t[t.flatten(idx)];
  }
  return acc;
}

double ConicSymbol::derivative(std::span<const double> xi, const MultiIndex& alpha) const {
  std::size_t n = params_.xi0.size();
  if (xi.size() != n || alpha.size() != n) throw DimensionError("point or order has the wrong dimension");
  if (alpha.total() > max_order_) throw PreconditionError("derivative order above the symbol's max order");
  double len = norm(xi);
  double N = params_.N;
  // The radial factor and all its derivatives vanish for |ξ| ≤ N/2.
  if (len <= N / 2) return 0.0;

  unsigned K = static_cast<unsigned>(alpha.total());
  JetSpace js(n, K);
  double xi0_len = norm(params_.xi0);
  std::vector<double> u = js.constant(0);
  std::vector<std::vector<double>> x;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(js.variable(i, xi[i]));
    auto sq = js.mul(x.back(), x.back());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += sq[k];
  }
  auto s = js.rsqrt(u);
  std::vector<std::vector<double>> g;
  std::vector<double> g0(n), zr(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto gi = js.mul(x[i], s);
    gi[0] -= params_.xi0[i] / xi0_len;
    for (auto& c : gi) c /= params_.r;
    g0[i] = gi[0];
    zr[i] = xi[i] / N;
    g.push_back(std::move(gi));
  }

  // D^γ Θ_{0,N}(g(ξ)) via Faà di Bruno.
  auto conic = [&](const MultiIndex& gamma) {
    if (gamma.is_zero()) return table_value(gamma, g0);
    auto terms = faa_di_bruno_terms(gamma, n);
    return faa_di_bruno_sum<double>(
        std::span<const FaaTerm>(terms), n, 0.0,
        [&](const MultiIndex& c) { return table_value(c, g0); },
        [&](std::size_t i, const MultiIndex& l) { return js.derivative(g[i], l); },
        [](const Rational& w) { return w.get_d(); });
  };
  double total = 0;
  for (const auto& beta : multi_indices_below(alpha)) {
    double radial = beta.is_zero() ? 1 - table_value(beta, zr)
                                   : -std::pow(N, -static_cast<double>(beta.total())) * table_value(beta, zr);
    if (radial == 0) continue;
    total += binomial(alpha, beta).get_d() * radial * conic(alpha - beta);
  }
  return total;
}

double ConicSymbol::value(std::span<const double> xi) const {
  return derivative(xi, MultiIndex(params_.xi0.size()));
}

GridFunction ConicSymbol::sample(const Grid& xi_grid) const {
  if (xi_grid.size() != params_.xi0.size()) throw DimensionError("xi grid has the wrong dimension");
  validate_grid(xi_grid);
  double reach = 2.0 * params_.N;
  for (const auto& a : xi_grid) {
    if (a.coordinate(0) > -reach || a.last() < reach) {
      throw PreconditionError("xi grid excludes the annulus N/2 <= |xi| <= 2N");
    }
  }
  GridFunction out(xi_grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(out.point(i));
  return out;
}

ConicSymbol build_conic_symbol(const ConicParams& params, unsigned max_order) {
  params.validate();
  return ConicSymbol(params, conic_table_grid(params.M, params.N, params.xi0.size()), max_order);
}

ConicProperties conic_properties(const ConicSymbol& symbol, const GridFunction& theta) {
  const auto& p = symbol.params();
  std::size_t n = p.xi0.size();
  double xi0_len = norm(p.xi0);
  ConicProperties out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    auto xi = theta.point(i);
    double len = norm(xi);
    double angle = 0;
    if (len > 0) {
      double s = 0;
      for (std::size_t a = 0; a < n; ++a) {
        double d = xi[a] / len - p.xi0[a] / xi0_len;
        s += d * d;
      }
      angle = std::sqrt(s);
    }
    if (len >= p.N && angle <= p.r / 2) {
      ++out.inside_samples;
      out.max_deviation_inside = std::max(out.max_deviation_inside, std::abs(theta[i] - 1));
    }
    if (len <= p.N / 2.0 || angle >= p.r) {
      ++out.outside_samples;
      out.max_outside = std::max(out.max_outside, std::abs(theta[i]));
    }
  }
  return out;
}

ConicReport verify_conic_bound(const ConicSymbol& symbol, const Grid& xi_grid, unsigned alpha_max) {
  const auto& p = symbol.params();
  std::size_t n = p.xi0.size();
  if (xi_grid.size() != n) throw DimensionError("xi grid has the wrong dimension");
  validate_grid(xi_grid);
  unsigned top = std::min({p.N, alpha_max, symbol.max_order()});
  ConicReport rep;
  rep.N = p.N;
  for (auto& a : multi_indices_up_to(n, top)) rep.entries.push_back({std::move(a), 0.0});

  GridFunction probe(xi_grid);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    auto xi = probe.point(i);
    double len = norm(xi);
    if (len <= p.N / 2.0) continue;
    for (auto& e : rep.entries) {
      unsigned k = static_cast<unsigned>(e.alpha.total());
      double d = std::abs(symbol.derivative(xi, e.alpha));
      double v = std::pow(1 + len, k) * d / std::pow(static_cast<double>(p.N), nplus(k, p.M));
      e.measured = std::max(e.measured, v);
    }
  }

  std::vector<double> by_order(top + 1, 0.0);
  for (const auto& e : rep.entries) {
    auto k = e.alpha.total();
    by_order[k] = std::max(by_order[k], e.measured);
    if (e.measured > 0) {
      rep.c_fit = std::max(rep.c_fit, std::pow(e.measured, 1.0 / (k + 1.0)));
    }
  }
  std::vector<double> ks, ls;
  for (unsigned k = 0; k <= top; ++k) {
    if (by_order[k] > 0) {
      ks.push_back(k);
      ls.push_back(std::log(by_order[k]));
    }
  }
  if (ks.size() >= 2) {
    double mk = 0, ml = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      mk += ks[i];
      ml += ls[i];
    }
    mk /= ks.size();
    ml /= ks.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      sxy += (ks[i] - mk) * (ls[i] - ml);
      sxx += (ks[i] - mk) * (ks[i] - mk);
    }
    double slope = sxy / sxx, icpt = ml - slope * mk;
    rep.growth_rate = std::exp(slope);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      rep.max_log_excess = std::max(rep.max_log_excess, ls[i] - (icpt + slope * ks[i]));
    }
  }
  return rep;
}

UniformConstant fit_uniform_constant(std::span<const ConicReport> reports) {
  UniformConstant u;
  if (reports.empty()) return u;
  const ConicReport* lo = &reports.front();
  const ConicReport* hi = &reports.front();
  bool finite = true;
  for (const auto& r : reports) {
    u.c = std::max(u.c, r.c_fit);
    finite = finite && std::isfinite(r.c_fit);
    if (r.N < lo->N) lo = &r;
    if (r.N > hi->N) hi = &r;
  }
  u.drift = hi->c_fit / lo->c_fit;
  u.pass = finite && std::isfinite(u.c) && u.drift <= u.drift_limit;
  return u;
}

Grid conic_xi_grid(unsigned N, std::size_t dim, std::size_t points) {
  if (points < 2) throw PreconditionError("xi grid needs at least two points per axis");
  Rational lo(-4 * static_cast<long>(N)), span(8 * static_cast<long>(N));
  Rational h = span / Rational(static_cast<long>(points - 1));
  h.canonicalize();
  return Grid(dim, GridAxis::uniform(lo, h, points));
}

}  // namespace horlab
