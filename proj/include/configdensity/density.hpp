#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "configdensity/bounds.hpp"
#include "configdensity/field.hpp"

namespace configdensity {

/// Finite-scale picture of the upper Banach density: for each window side t
/// the largest window average found, plus the maximum over the last
/// `tail` sides as the reported estimate. No convergence is claimed.
struct DensityEnvelope {
  std::vector<double> t_values;
  std::vector<double> sup_averages;
  std::vector<double> strides;
  double estimate = 0.0;
};

struct BanachOptions {
  /// Centre spacing; 0 picks one cell for t <= 16 h and t/8 beyond.
  double stride = 0.0;
  std::size_t tail = 3;
  /// Only the window centred at the grid centre (upper density instead of
  /// upper Banach density).
  bool origin_only = false;
};

/// Scans windows of each side in `t_schedule` (increasing, each at most the
/// grid extent). Zero_outside fields use windows lying inside the grid, which
/// dominate any partially outside window; periodic fields scan centres over
/// one period. Errors: window_too_large, invalid_parameter.
DensityEnvelope banach_density(const DensityField& f, const std::vector<double>& t_schedule,
                               const BanachOptions& options = {});

/// Compares
///   A_n = (1/m(nQ)) integral_{nQ} integral_{[0,1]^d} f(x + v) dx dv
///   B_n = (1/m(Q)) integral chi_Q (Z_n f) = (1/m(nQ)) integral_{nQ} f
/// for the cube Q = lo + [0, side]^d. A_n equals (1/m(nQ)) integral f K with
/// a separable kernel 0 <= K <= 1 that is 1 on the inner cube of side
/// n*side - 1 and vanishes outside the outer cube of side n*side + 1, so
/// |A_n - B_n| <= ((nr+1)^d - (nr-1)^d) / (nr)^d. Both integrals are exact
/// for the piecewise-constant field. The report also carries the
/// (nr+1)^d - (nr)^d variant of the gap and 2^d (nr)^{d-1} / (n^d m(Q)).
/// Throws Error("n_below_threshold") when n < ceil(1/side).
BoundReport window_sandwich_check(const DensityField& f, std::span<const double> lo, double side,
                                  int n);

}  // namespace configdensity
