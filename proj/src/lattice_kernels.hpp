#pragma once

// Sums of the form sum_x a(x) b(x + v) over a regular grid, where b is read
// by multilinear interpolation. For a fixed offset v the interpolation
// weights are the same at every x, so the sum splits into at most 2^d
// integer-shift correlations that run over contiguous rows.

#include <array>
#include <span>
#include <vector>

#include "configdensity/field.hpp"

namespace configdensity::detail {

/// Index bounding box [lo, hi) of the nonzero samples; empty when lo >= hi on
/// some axis.
struct Box {
  std::array<long, 3> lo{0, 0, 0};
  std::array<long, 3> hi{0, 0, 0};

  bool empty() const noexcept {
    return lo[0] >= hi[0] || lo[1] >= hi[1] || lo[2] >= hi[2];
  }
};

/// A read-only view of grid samples plus their support box.
struct Lattice {
  const Grid* grid = nullptr;
  Boundary boundary = Boundary::zero_outside;
  std::span<const double> values;
  Box support;
};

Box support_box(const Grid& g, std::span<const double> values);
Lattice make_lattice(const Grid& g, Boundary b, std::span<const double> values);

/// sum_x a(x) b(x + shift) for an integer index shift. The sum runs over the
/// support box of a; b follows its boundary mode.
double shifted_dot_int(const Lattice& a, const Lattice& b, const std::array<long, 3>& shift);

/// sum_x a(x) b(x + v) for a physical offset v, b interpolated multilinearly.
double shifted_dot(const Lattice& a, const Lattice& b, const std::array<double, 3>& v);

/// out(x) = a(x) * b(x + v), b interpolated. Resizes `out` to the grid and
/// returns the support box of the product.
Box shifted_product(const Lattice& a, const Lattice& b, const std::array<double, 3>& v,
                    std::vector<double>& out);

}  // namespace configdensity::detail
