#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "configdensity/field.hpp"
#include "configdensity/functionals.hpp"
#include "configdensity/generators.hpp"

namespace configdensity {

enum class FunctionalKind { pair, d1, colinear };
std::string to_string(FunctionalKind k);

/// The field part of a configuration: generator, grid, boundary, allow_clip.
struct FieldConfig {
  GeneratorSpec generator;
  Grid grid;
  Boundary boundary = Boundary::zero_outside;
  bool allow_clip = false;
};

/// Reads only the field keys; other keys are ignored. Throws
/// Error("config_error").
FieldConfig field_config_from_json(const nlohmann::json& j);
DensityField generate(const FieldConfig& config);

/// A (generator x scale x alpha) experiment. JSON layout:
/// {
///   "generator": {"kind": ..., "params": {...}, "seed": ...},
///   "grid": {"lo": [...], "hi": [...], "spacing": h}
///        or {"shape": [...], "spacing": h, "origin": [...]},
///   "boundary": "zero_outside" | "periodic",      (default zero_outside)
///   "allow_clip": false,
///   "functional": "pair" | "d1" | "colinear",
///   "method": "spatial" | "spectral",             (pair only)
///   "t_min": ..., "t_max": ..., "t_steps": ...,
///   "t_spacing": "geometric" | "linear",          (default geometric)
///   "alpha_list": [...], "M": 1.0,                (d1 only)
///   "circle_nodes": 0, "ray_nodes": 64, "n_dirs": 0,
///   "epsilon_num": ..., "delta_nominal": ...,     (optional)
///   "record_timing": false,
///   "output": "rows.csv"                          (optional)
/// }
struct SweepConfig {
  GeneratorSpec generator;
  Grid grid;
  Boundary boundary = Boundary::zero_outside;
  bool allow_clip = false;
  FunctionalKind functional = FunctionalKind::pair;
  Method method = Method::spatial;
  double t_min = 1.0;
  double t_max = 2.0;
  std::size_t t_steps = 2;
  bool geometric = true;
  std::vector<double> alpha_list;
  double M = 1.0;
  QuadratureOptions quadrature;
  std::size_t n_dirs = 0;
  std::optional<double> epsilon_num;
  std::optional<double> delta_nominal;
  bool record_timing = false;
  std::string output;

  std::vector<double> t_values() const;
};

/// Throws Error("config_error") with a message that starts with the offending
/// field name.
SweepConfig sweep_config_from_json(const nlohmann::json& j);

struct SweepRow {
  double t = 0.0;
  std::optional<double> alpha;
  double value = 0.0;
  Method method = Method::spatial;
  bool positive = false;
  std::int64_t elapsed_ns = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (t, alpha)
  double epsilon_num = 0.0;
  std::optional<double> onset;
};

/// epsilon_num = 1e-6 * m(support) * delta_nominal^3, where delta_nominal
/// defaults to the field's largest value.
double default_epsilon(const DensityField& f, std::optional<double> delta_nominal = std::nullopt);

/// Runs every (t, alpha) point of the configuration on an already generated
/// field.
SweepResult run_sweep(const SweepConfig& config, const DensityField& f);
/// Generates the field from the configuration, then runs the sweep.
SweepResult run_sweep(const SweepConfig& config);

/// Least swept t beyond which every row is positive; nullopt ("none") when
/// the last scale is not positive. Throws Error("empty_sweep").
std::optional<double> find_onset(const std::vector<SweepRow>& rows);

/// Columns t,alpha,value,method,positive,elapsed_ns with %.17g numbers and an
/// empty alpha when not applicable.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Value against t on a logarithmic t axis, one polyline per alpha.
std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title);

}  // namespace configdensity
