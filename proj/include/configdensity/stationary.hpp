#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "configdensity/field.hpp"

namespace configdensity {

/// Translation-invariant random field laws.
///
/// bernoulli_tiling: cubes of side `cell` are filled with value `level`
/// independently with probability `delta`. The tiling is shifted by a phase
/// drawn uniformly from [0, cell)^d, which turns a law that is only invariant
/// under lattice shifts into one invariant under every translation (the
/// usual suspension construction).
///
/// poisson_balls: a Poisson process of centres with the given intensity on
/// the periodic domain; every point within `radius` of a centre takes value
/// `level`.
struct StationaryModel {
  enum class Kind { bernoulli_tiling, poisson_balls } kind = Kind::bernoulli_tiling;
  double cell = 1.0;
  double delta = 0.5;
  double level = 1.0;
  double intensity = 0.1;
  double radius = 1.0;
  std::uint64_t seed = 0;

  /// delta * level, or level * (1 - exp(-intensity * |B_radius|)).
  double mean(int dim) const;
};

/// Draws one realisation on `grid` (returned with periodic boundary).
/// Deterministic in model.seed. Throws Error("extent_not_multiple") when a
/// tiling does not fit the periodic extent.
DensityField sample_stationary(const StationaryModel& model, const Grid& grid);

struct ErgodicRow {
  double t = 0.0;
  double mean_abs_dev = 0.0;
  double std_dev = 0.0;
  std::size_t n_seeds = 0;
};

struct ErgodicTable {
  std::vector<ErgodicRow> rows;
  /// deviations[i][s] = |window_average(sample_s, 0, t_i) - mean|.
  std::vector<std::vector<double>> deviations;
  /// Fraction of seeds whose deviation at the first t exceeds the one at the
  /// last t.
  double paired_decrease_fraction = 0.0;
};

/// Samples n_seeds fields (seeds model.seed + i) on a periodic grid centred at
/// the origin with the given spacing and extent, and records the deviation of
/// the window average over Q(0, t) from the model mean for each t.
/// Errors: invalid_parameter (t_list not increasing, n_seeds < 1).
ErgodicTable ergodic_average_experiment(const StationaryModel& model,
                                        const std::vector<double>& t_list, std::size_t n_seeds,
                                        double spacing, double extent);

/// integral_Q (Z_t f) = t^{-d} integral_{tQ} f for the cube Q = lo + [0, side]^d.
double scaled_cube_integral(const DensityField& f, std::span<const double> lo, double side,
                            double t);

/// CSV with columns t,mean_abs_dev,std_dev,n_seeds.
std::string ergodic_csv(const ErgodicTable& table);

}  // namespace configdensity
