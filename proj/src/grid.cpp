#include "horlab/grid.hpp"

#include <cmath>
#include <iomanip>

#include "horlab/error.hpp"

namespace horlab {

GridAxis GridAxis::uniform(const Rational& lo, const Rational& spacing, std::size_t count) {
  return GridAxis{lo, spacing, count};
}

GridAxis GridAxis::periodic(const Rational& lo, const Rational& hi, std::size_t count) {
  if (count == 0) throw PreconditionError("axis needs at least one sample");
  Rational h = (hi - lo) / Rational(static_cast<long>(count));
  h.canonicalize();
  return GridAxis{lo, h, count};
}

void validate_grid(const Grid& grid) {
  if (grid.empty()) throw PreconditionError("grid needs at least one axis");
  for (const auto& a : grid) {
    if (sgn(a.spacing) <= 0) throw PreconditionError("grid spacing must be positive");
    if (a.count < 2) throw PreconditionError("each grid axis needs at least two samples");
  }
}

std::size_t grid_size(const Grid& grid) {
  std::size_t n = 1;
  for (const auto& a : grid) n *= a.count;
  return n;
}

GridFunction::GridFunction(Grid axes) : axes_(std::move(axes)) {
  validate_grid(axes_);
  samples_.assign(grid_size(axes_), 0.0);
}

GridFunction::GridFunction(Grid axes, std::vector<double> samples)
    : axes_(std::move(axes)), samples_(std::move(samples)) {
  validate_grid(axes_);
  if (samples_.size() != grid_size(axes_)) {
    throw DimensionError("sample count does not match the grid");
  }
}

std::vector<std::size_t> GridFunction::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t a = dim(); a-- > 0;) {
    idx[a] = flat % axes_[a].count;
    flat /= axes_[a].count;
  }
  return idx;
}

std::size_t GridFunction::flatten(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dim(); ++a) flat = flat * axes_[a].count + idx[a];
  return flat;
}

std::vector<double> GridFunction::point(std::size_t flat) const {
  auto idx = unflatten(flat);
  std::vector<double> x(dim());
  for (std::size_t a = 0; a < dim(); ++a) x[a] = axes_[a].coordinate(idx[a]);
  return x;
}

double GridFunction::cell_volume() const {
  double v = 1;
  for (const auto& a : axes_) v *= a.h();
  return v;
}

double GridFunction::max_abs() const {
  double m = 0;
  for (double s : samples_) m = std::max(m, std::abs(s));
  return m;
}

double GridFunction::integral() const {
  double s = 0;
  for (double v : samples_) s += v;
  return s * cell_volume();
}

void GridFunction::require_finite() const {
  for (double s : samples_) {
    if (!std::isfinite(s)) throw PreconditionError("grid function has non-finite samples");
  }
}

void GridFunction::write_csv(std::ostream& os) const {
  for (std::size_t a = 0; a < dim(); ++a) os << "x" << a + 1 << ',';
  os << "value\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < size(); ++i) {
    for (double c : point(i)) os << c << ',';
    os << samples_[i] << '\n';
  }
}

}  // namespace horlab
