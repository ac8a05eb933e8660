#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "horlab/cutoff.hpp"
#include "horlab/grid.hpp"
#include "horlab/multi_index.hpp"

namespace horlab {

struct ConicParams {
  std::vector<double> xi0;
  double r = 1;
  unsigned M = 3;
  unsigned N = 16;

  void validate() const;
};

/// Parameters of Θ_{0,N}: Σ the ball of radius 1/2 and inner r₀ = 1/(M+2),
/// so Θ_{0,N} = 1 for |ζ| ≤ 1/2 and 0 for |ζ| ≥ 1.
CutoffParams conic_inner_params(unsigned M, unsigned N, std::size_t dim);

/// Default periodic table grid [−2,2)ⁿ for Θ_{0,N}, fine enough for the
/// construction's resolution requirement.
Grid conic_table_grid(unsigned M, unsigned N, std::size_t dim);

/// Θ_N(ξ) = (1 − Θ_{0,N})(ξ/N) · Θ_{0,N}(r⁻¹(ξ/|ξ| − ξ₀/|ξ₀|)), with the
/// Θ_{0,N} table and its derivatives kept for evaluation off the table grid.
class ConicSymbol {
 public:
  ConicSymbol(ConicParams params, const Grid& table_grid, unsigned max_order);

  const ConicParams& params() const { return params_; }
  const GridFunction& table() const { return tables_.front(); }
  unsigned max_order() const { return max_order_; }

  /// D^α Θ_N(ξ) for |α| ≤ max_order.
  double derivative(std::span<const double> xi, const MultiIndex& alpha) const;
  double value(std::span<const double> xi) const;

  /// Θ_N sampled on a ξ grid. The grid must reach |ξ| = 2N along every axis.
  GridFunction sample(const Grid& xi_grid) const;

 private:
  double table_value(const MultiIndex& beta, std::span<const double> z) const;

  ConicParams params_;
  unsigned max_order_;
  std::vector<MultiIndex> orders_;
  std::vector<GridFunction> tables_;  // D^β Θ_{0,N}, β in orders_
};

ConicSymbol build_conic_symbol(const ConicParams& params, unsigned max_order = 4);

struct ConicProperties {
  double max_deviation_inside = 0;  // max |Θ − 1| on Γ_{ξ₀,N,r/2}
  double max_outside = 0;           // max |Θ| off Γ_{ξ₀,N/2,r}
  std::size_t inside_samples = 0;
  std::size_t outside_samples = 0;

  bool holds(double tol) const { return max_deviation_inside <= tol && max_outside <= tol; }
};

ConicProperties conic_properties(const ConicSymbol& symbol, const GridFunction& theta);

struct ConicEntry {
  MultiIndex alpha;
  /// max over the grid of (1+|ξ|)^{|α|} |Θ_N^{(α)}(ξ)| / N^{(|α|−M)⁺}
  double measured = 0;
};

struct ConicReport {
  unsigned N = 0;
  std::vector<ConicEntry> entries;
  /// Smallest C ≥ 1 with C^{|α|+1} ≥ measured for every α.
  double c_fit = 1;
  /// Least-squares line through log max_{|α|=k} measured against k.
  double growth_rate = 1;
  /// Largest excess of a log-measurement over that line.
  double max_log_excess = 0;
};

/// Measures the conic derivative bound on the sample points of xi_grid for |α| ≤
/// min(N, alpha_max, max_order).
ConicReport verify_conic_bound(const ConicSymbol& symbol, const Grid& xi_grid, unsigned alpha_max);

struct UniformConstant {
  double c = 1;             // dominates every report
  double drift = 1;         // c_fit at the largest N over c_fit at the smallest
  double drift_limit = 1.25;
  bool pass = false;        // finite, and no growth with N beyond drift_limit
};

UniformConstant fit_uniform_constant(std::span<const ConicReport> reports);

/// Symmetric ξ grid [−4N, 4N]ⁿ with the given points per axis.
Grid conic_xi_grid(unsigned N, std::size_t dim, std::size_t points);

}  // namespace horlab
