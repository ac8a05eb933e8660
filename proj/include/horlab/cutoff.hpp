#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "horlab/convolution.hpp"
#include "horlab/grid.hpp"
#include "horlab/multi_index.hpp"

namespace horlab {

/// The set Σ: an axis-aligned box or a Euclidean ball.
struct Region {
  enum class Shape { Box, Ball };
  Shape shape = Shape::Box;
  std::vector<double> lo, hi;  // box corners
  std::vector<double> center;  // ball
  double radius = 0;

  static Region box(std::vector<double> lo, std::vector<double> hi);
  static Region ball(std::vector<double> center, double radius);

  std::size_t dim() const { return shape == Shape::Box ? lo.size() : center.size(); }
  /// Euclidean distance from x to the region (0 inside).
  double distance(std::span<const double> x) const;
  /// Bounding box corners.
  std::vector<double> lower() const;
  std::vector<double> upper() const;
  std::string to_string() const;
};

struct CutoffParams {
  Region sigma;
  double r = 0.25;
  unsigned M = 3;
  unsigned N = 8;

  /// Throws PreconditionError for N < 1, M < 1 or r ≤ 0.
  void validate() const;
};

/// ψ(x) = c·exp(−1/(1/16 − |x|²)) on |x| < 1/4 with unit mass, and its
/// dilations ψ_δ(x) = δ^{−n} ψ(x/δ).
struct Bump {
  static constexpr double kRadius = 0.25;

  std::size_t dim = 1;

  /// Unnormalized profile of ψ_δ at x.
  static double profile(std::span<const double> x, double delta);
  /// c such that c·profile has unit mass (δ = 1).
  double normalization() const;
  /// C₀ = sup_i ‖∂_i ψ‖_{L¹}.
  double derivative_l1() const;
};

/// ψ_δ sampled on the grid and normalized to unit Riemann mass. The grid
/// must resolve the support radius δ/4 with at least eight samples.
GridFunction build_mollifier(double delta, const Grid& grid);

/// Dilation applied to ψ inside the cutoff construction, 1/(M+2). It keeps
/// the total kernel radius below r/2 so that φ_N ≡ 1 on Σ.
double eh_dilation(unsigned M);

/// Constant C₀ of the kernel actually used by the construction.
double eh_c0(std::size_t dim, unsigned M);

enum class ConvolutionMethod { Fft, DirectSerial, DirectParallel };

/// φ_N = ψ_{2κr/N}^{∗N} ∗ ψ_{2κr}^{∗M} ∗ χ with χ the indicator of
/// {dist(x;Σ) < r/2} and κ = eh_dilation(M).
GridFunction build_eh_cutoff(const CutoffParams& params, const Grid& grid,
                             ConvolutionMethod method = ConvolutionMethod::Fft);

struct CutoffProperties {
  double max_deviation_on_sigma = 0;  // max |φ − 1| on Σ
  double max_outside = 0;             // max |φ| where dist > (1+M/2)r
  double min_value = 0;
  double max_value = 0;

  bool holds(double tol) const {
    return max_deviation_on_sigma <= tol && max_outside <= tol && min_value >= -tol &&
           max_value <= 1 + tol;
  }
};

CutoffProperties cutoff_properties(const GridFunction& phi, const CutoffParams& params);

struct BoundEntry {
  MultiIndex alpha;
  double measured = 0;
  double bound = 0;
  /// Relative disagreement between the spectral derivative and a central
  /// difference of the next-lower spectral derivative.
  double crosscheck = 0;
  bool resolved = true;
  bool pass = false;
};

struct BoundReport {
  double c0 = 0;
  double tolerance = 0.05;
  std::vector<BoundEntry> entries;

  bool passed() const;
  bool resolved() const;
};

/// (C₀/2r)^{|α|} N^{(|α|−M)⁺}
double eh_bound(double c0, const CutoffParams& params, unsigned order);

/// Measures max |D^α φ| for every α with |α| ≤ min(N, alpha_max).
BoundReport verify_eh_bound(const GridFunction& phi, const CutoffParams& params,
                            unsigned alpha_max);

}  // namespace horlab
