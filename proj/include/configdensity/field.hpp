#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace configdensity {

enum class Boundary { zero_outside, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& name);

/// Regular grid of cell-centred samples. Sample i along an axis sits at
/// origin + i*spacing and represents the cell of width `spacing` centred there,
/// so the covered region along that axis is
/// [origin - spacing/2, origin + (shape-1/2)*spacing].
///
/// Axes beyond `dim` carry shape 1 and origin 0.
struct Grid {
  int dim = 2;
  std::array<std::size_t, 3> shape{1, 1, 1};
  double spacing = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};

  static Grid make(std::span<const std::size_t> shape, double spacing,
                   std::span<const double> origin);
  /// Grid whose cells exactly tile the box [lo, hi] (per axis: hi-lo must be a
  /// whole number of cells within 1e-9 relative).
  static Grid covering(std::span<const double> lo, std::span<const double> hi,
                       double spacing);

  std::size_t size() const noexcept { return shape[0] * shape[1] * shape[2]; }
  double coordinate(int axis, std::size_t i) const noexcept {
    return origin[axis] + static_cast<double>(i) * spacing;
  }
  double lower_edge(int axis) const noexcept { return origin[axis] - 0.5 * spacing; }
  double upper_edge(int axis) const noexcept {
    return origin[axis] + (static_cast<double>(shape[axis]) - 0.5) * spacing;
  }
  double extent(int axis) const noexcept {
    return static_cast<double>(shape[axis]) * spacing;
  }
  double cell_volume() const noexcept;
  /// Row-major flat index (last axis fastest).
  std::size_t index(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    return (i * shape[1] + j) * shape[2] + k;
  }

  /// Throws Error("invalid_grid") unless dim is 1..3, every used axis has
  /// shape >= 2, unused axes have shape 1, and spacing is finite and > 0.
  void validate() const;

  bool operator==(const Grid&) const = default;
};

/// Discretized element of the unit-interval-valued function space: a grid of
/// values in [0,1]. Immutable; copies share the value buffer.
class DensityField {
 public:
  /// Throws Error("invariant_violation") if a value is outside [0,1] or the
  /// value count does not match the grid.
  DensityField(Grid grid, std::vector<double> values,
               Boundary boundary = Boundary::zero_outside);

  static DensityField constant(const Grid& grid, double value,
                               Boundary boundary = Boundary::zero_outside);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim; }
  Boundary boundary() const noexcept { return boundary_; }
  std::span<const double> values() const noexcept { return *values_; }
  double operator[](std::size_t flat) const noexcept { return (*values_)[flat]; }
  double at(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    return (*values_)[grid_.index(i, j, k)];
  }

  /// Sum of values times cell volume.
  double mass() const;
  /// Sum of squared values times cell volume.
  double squared_norm() const;
  /// Measure of the cells carrying a nonzero value.
  double support_measure() const;
  double max_value() const;

  /// Multilinear interpolation between samples; reads outside the grid follow
  /// the boundary mode.
  double sample(std::span<const double> point) const;

  DensityField with_boundary(Boundary b) const;

 private:
  Grid grid_;
  std::shared_ptr<const std::vector<double>> values_;
  Boundary boundary_;
};

/// (T_v f)(x) = f(x + v). Lattice-aligned shifts (v/spacing within 1e-9 of an
/// integer on every axis) are exact index shifts; others interpolate.
DensityField translate(const DensityField& f, std::span<const double> v);

/// (Z_t f)(x) = f(t x), sampled by multilinear interpolation on `output`
/// (defaults to the input grid). Throws Error("invalid_scale") for t <= 0 or
/// non-finite t.
DensityField rescale(const DensityField& f, double t,
                     const std::optional<Grid>& output = std::nullopt);

/// Exact integral of the piecewise-constant field over an axis-aligned box.
/// Builds a cumulative table once so repeated box queries are O(2^d * 4^d).
class WindowIntegrator {
 public:
  explicit WindowIntegrator(const DensityField& f);

  double integral(std::span<const double> lo, std::span<const double> hi) const;
  /// Average over the cube of side `side` centred at `center`, in [0,1].
  double average(std::span<const double> center, double side) const;

  const Grid& grid() const noexcept { return grid_; }

 private:
  double cumulative(const std::array<double, 3>& x) const;
  double cumulative_base(const std::array<double, 3>& x) const;
  double table_integral(const std::array<double, 3>& lo, const std::array<double, 3>& hi) const;
  double reference_measure(const std::array<double, 3>& lo, const std::array<double, 3>& hi) const;

  Grid grid_;
  Boundary boundary_;
  std::array<std::size_t, 3> corners_{};  // shape + 1 on used axes
  std::vector<double> table_;              // prefix sums at cell corners
  double ref_ = 0.0;                       // subtracted before summing
};

/// (1/side^d) * integral of f over the cube Q(center, side), by exact cell
/// overlap.
double window_average(const DensityField& f, std::span<const double> center, double side);

/// Binary .dfield format: 72-byte little-endian header
///   "DFLD" | u32 version=1 | u32 dim | u64 shape[3] | f64 spacing |
///   f64 origin[3] | u32 boundary (0 zero_outside, 1 periodic)
/// followed by shape product f64 values in row-major order.
void save_field(const DensityField& f, const std::filesystem::path& path);
/// Throws Error("bad_field_file") for malformed or truncated input and
/// Error("invariant_violation") for values outside [0,1].
DensityField load_field(const std::filesystem::path& path);

std::vector<unsigned char> encode_field(const DensityField& f);
DensityField decode_field(std::span<const unsigned char> bytes);

}  // namespace configdensity
