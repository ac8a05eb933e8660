#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "horlab/execution.hpp"
#include "horlab/grid.hpp"
#include "horlab/multi_index.hpp"

namespace horlab {

/// Compactly supported kernel sampled at the grid spacing and centred at 0.
/// Weights already include the cell volume, so convolution is a plain sum.
struct Stencil {
  std::vector<std::size_t> half_width;  // per axis, in samples
  std::vector<double> weights;          // (2w₁+1)×…×(2w_n+1), row-major

  std::size_t dim() const { return half_width.size(); }
  double mass() const;
};

/// Samples f at offsets |x_a| ≤ radius on the grid spacing and rescales so
/// the weights sum to one.
Stencil sample_kernel(const Grid& grid, double radius,
                      const std::function<double(std::span<const double>)>& f);

/// Periodic (f ∗ k)[i] = Σ_j k[j] f[i − j]. Serial reference or OpenMP.
GridFunction convolve_direct(const GridFunction& f, const Stencil& k, Execution exec);

/// f ∗ k₁ ∗ … ∗ k_s with one forward and one inverse transform.
GridFunction convolve_fft(const GridFunction& f, std::span<const Stencil> kernels);

/// f ∗ k₁^{∗p₁} ∗ … ∗ k_s^{∗p_s}, each kernel transformed once.
GridFunction convolve_fft_powers(const GridFunction& f, std::span<const Stencil> kernels,
                                 std::span<const unsigned> powers);

/// Modes of f whose magnitude stays below noise_floor·max|f̂| beyond some
/// frequency are treated as roundoff: every mode past the last one above the
/// floor (per axis) is dropped before differentiating. Without this the
/// (ik)^α factor amplifies sample roundoff into the high derivatives.
/// A floor of 0 keeps every mode.
struct SpectralOptions {
  double noise_floor = 1e-12;
};

/// D^α f computed spectrally on the periodic grid. Odd derivatives drop the
/// Nyquist mode.
GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha,
                                 const SpectralOptions& options = {});

/// Several derivatives sharing one forward transform.
std::vector<GridFunction> spectral_derivatives(const GridFunction& f,
                                               std::span<const MultiIndex> alphas,
                                               const SpectralOptions& options = {});

/// Second-order central difference of f along one axis (periodic).
GridFunction central_difference(const GridFunction& f, std::size_t axis);

}  // namespace horlab
