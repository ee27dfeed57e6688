#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "configdensity/field.hpp"

namespace configdensity {

enum class GeneratorKind {
  constant_on_box,
  ball,
  union_balls,
  periodic_squares,
  bernoulli_cells,
  custom_file,
};

std::string to_string(GeneratorKind k);
GeneratorKind generator_kind_from_string(const std::string& name);

/// Declarative description of a field. Which parameters matter depends on the
/// kind:
///   constant_on_box   delta (level), lo, hi
///   ball              delta (level), center, radius
///   union_balls       delta (level), count, radius, lo, hi (box holding the
///                     whole balls), seed
///   periodic_squares  delta (level), period, side (default period/2),
///                     lo, hi (optional region; defaults to the grid)
///   bernoulli_cells   delta (fill probability), level (value of a filled
///                     cell), cell, lo, hi (optional region), seed
///   custom_file       path (.dfield), resampled onto the requested grid
///
/// A cell of the output grid takes the set's value when its centre lies in
/// the set.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::constant_on_box;
  double delta = 1.0;
  double level = 1.0;
  double radius = 1.0;
  double period = 2.0;
  double side = 0.0;
  double cell = 1.0;
  std::size_t count = 0;
  std::vector<double> center;
  std::vector<double> lo;
  std::vector<double> hi;
  std::string path;
  std::uint64_t seed = 0;

  /// Throws Error("invalid_generator") naming the offending parameter.
  void validate(int dim) const;
};

/// {"kind": ..., "params": {...}, "seed": ...}
nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const nlohmann::json& j);

/// Deterministic in (spec, grid). Throws Error("support_clipped") when the
/// requested support leaves the grid, unless allow_clip is set.
DensityField generate(const GeneratorSpec& spec, const Grid& grid,
                      Boundary boundary = Boundary::zero_outside, bool allow_clip = false);

}  // namespace configdensity
