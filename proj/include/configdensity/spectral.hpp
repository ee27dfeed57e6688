#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "configdensity/bessel.hpp"
#include "configdensity/field.hpp"

namespace configdensity {

/// Real-valued samples on a grid with no range restriction. Used for
/// intermediate results such as unclamped convolutions.
struct RealField {
  Grid grid;
  std::vector<double> values;

  double sum_times_volume() const;
};

/// Discrete approximation of the continuous transform
///   g^(xi) = integral g(x) e^{-2 pi i <x, xi>} dx
/// on the frequency lattice xi_k = k * freq_step[axis], with
/// freq_step[axis] = 1 / (shape * spacing) of the transformed grid. Coefficients are stored in
/// FFT order: index k on an axis of extent N carries frequency
/// (k < (N+1)/2 ? k : k - N) * freq_step[axis].
struct Spectrum {
  Grid grid;  // the (possibly zero-padded) sample grid the transform covers
  std::array<double, 3> freq_step{0.0, 0.0, 0.0};
  double source_spacing = 0.0;
  std::vector<std::complex<double>> values;

  int dim() const noexcept { return grid.dim; }
  double frequency(int axis, std::size_t k) const noexcept {
    const auto n = grid.shape[axis];
    const double signed_k = k < (n + 1) / 2 ? static_cast<double>(k)
                                            : static_cast<double>(k) - static_cast<double>(n);
    return signed_k * freq_step[axis];
  }
  /// Euclidean norm of the frequency at a flat index.
  double radius(std::size_t flat) const noexcept;
  /// sum |g^|^2 times the frequency cell volume.
  double energy() const;
};

/// Sample-sum transform g^(xi_k) = h^d sum_x g(x) e^{-2 pi i <x, xi_k>},
/// origin phase included. `pad` multiplies every axis with trailing zeros;
/// pad = 0 picks 2 for zero_outside fields and 1 for periodic ones.
Spectrum forward_transform(const DensityField& f, std::size_t pad = 0);
Spectrum forward_transform(const RealField& f, std::size_t pad = 1);

/// Inverse of forward_transform on the spectrum's full grid (padding kept).
/// The imaginary part is discarded.
RealField inverse_transform(const Spectrum& s);

/// The leading block of `f` matching `target` (same origin and spacing).
RealField crop(const RealField& f, const Grid& target);

/// Multiplies every coefficient by m(|xi|).
Spectrum radial_multiplier(const Spectrum& s, const std::function<double(double)>& m);

/// Multiplies by J0(2 pi t |xi|), the transform of the normalised circle
/// measure of radius t. Throws Error("circle_measure_requires_2d") unless d=2.
Spectrum circle_multiplier(const Spectrum& s, double t, J0Function j0 = bessel_j0);

/// Multiplies by e^{-lambda |xi|}. Throws Error("invalid_lambda") for
/// lambda < 0.
Spectrum poisson_multiplier(const Spectrum& s, double lambda);

/// Closed-form Poisson kernel P_lambda(x) = c_d y / (y^2 + |x|^2)^{(d+1)/2}
/// with y = lambda / (2 pi), whose transform is e^{-lambda |xi|}.
double poisson_kernel(int dim, double lambda, double r);

struct SmoothingResult {
  DensityField field;     // cropped to the input grid, clamped to [0,1]
  RealField raw;          // cropped, unclamped
  double raw_total_mass;  // mass over the full padded torus (preserved)
  double max_clamp;       // largest correction applied by clamping
};

/// g * P_lambda evaluated through the spectrum. Zero_outside fields are
/// convolved on a 2x zero-padded torus, periodic fields on their own torus.
/// Throws Error("invalid_lambda") for lambda < 0 or non-finite.
SmoothingResult poisson_smooth_report(const DensityField& f, double lambda);
DensityField poisson_smooth(const DensityField& f, double lambda);

}  // namespace configdensity
