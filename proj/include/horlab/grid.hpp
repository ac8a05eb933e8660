#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "horlab/rational.hpp"

namespace horlab {

/// Uniform axis origin + i·spacing, i = 0…count−1. The metadata is exact so
/// that grid points such as 5/8 are hit without rounding.
struct GridAxis {
  Rational origin;
  Rational spacing;
  std::size_t count = 0;

  double coordinate(std::size_t i) const { return origin.get_d() + static_cast<double>(i) * h(); }
  double h() const { return spacing.get_d(); }
  /// Last sample coordinate.
  double last() const { return coordinate(count - 1); }

  /// count points starting at lo with the given spacing.
  static GridAxis uniform(const Rational& lo, const Rational& spacing, std::size_t count);
  /// count points covering [lo, hi) with spacing (hi − lo)/count, the layout
  /// used for periodic (Fourier) work.
  static GridAxis periodic(const Rational& lo, const Rational& hi, std::size_t count);
};

using Grid = std::vector<GridAxis>;

/// Dense samples on a tensor grid, row-major with the last axis fastest.
class GridFunction {
 public:
  GridFunction() = default;
  /// Zero samples on the grid. Validates the axes.
  explicit GridFunction(Grid axes);
  GridFunction(Grid axes, std::vector<double> samples);

  std::size_t dim() const { return axes_.size(); }
  std::size_t size() const { return samples_.size(); }
  const Grid& axes() const { return axes_; }
  const GridAxis& axis(std::size_t i) const { return axes_[i]; }
  std::span<double> samples() { return samples_; }
  std::span<const double> samples() const { return samples_; }
  double& operator[](std::size_t flat) { return samples_[flat]; }
  double operator[](std::size_t flat) const { return samples_[flat]; }

  /// Per-axis indices of a flat index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> idx) const;
  /// Coordinates of a sample.
  std::vector<double> point(std::size_t flat) const;
  /// Product of the spacings.
  double cell_volume() const;

  double max_abs() const;
  /// Riemann sum of the samples.
  double integral() const;
  /// Throws PreconditionError when a sample is NaN or infinite.
  void require_finite() const;

  /// One row per sample: coordinates then value, with a header row.
  void write_csv(std::ostream& os) const;

 private:
  Grid axes_;
  std::vector<double> samples_;
};

/// Throws PreconditionError unless spacing > 0 and count ≥ 2 on each axis.
void validate_grid(const Grid& grid);

std::size_t grid_size(const Grid& grid);

}  // namespace horlab
