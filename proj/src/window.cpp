#include <algorithm>
#include <cmath>

#include "configdensity/error.hpp"
#include "configdensity/field.hpp"

namespace configdensity {

WindowIntegrator::WindowIntegrator(const DensityField& f)
    : grid_(f.grid()), boundary_(f.boundary()) {
  for (int a = 0; a < 3; ++a) corners_[a] = a < grid_.dim ? grid_.shape[a] + 1 : 1;
  table_.assign(corners_[0] * corners_[1] * corners_[2], 0.0);

  // table(a,b,c) = integral of f - ref over cells with index < (a,b,c) on the
  // used axes. Subtracting a reference value keeps the sums small for nearly
  // constant fields and makes constant fields exact.
  const double vol = grid_.cell_volume();
  const auto vals = f.values();
  ref_ = vals.empty() ? 0.0 : vals[0];
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> double& {
    return table_[(a * corners_[1] + b) * corners_[2] + c];
  };
  const std::size_t off0 = grid_.dim >= 1 ? 1 : 0;
  const std::size_t off1 = grid_.dim >= 2 ? 1 : 0;
  const std::size_t off2 = grid_.dim >= 3 ? 1 : 0;
  for (std::size_t i = 0; i < grid_.shape[0]; ++i) {
    for (std::size_t j = 0; j < grid_.shape[1]; ++j) {
      for (std::size_t k = 0; k < grid_.shape[2]; ++k) {
        at(i + off0, j + off1, k + off2) = (vals[grid_.index(i, j, k)] - ref_) * vol;
      }
    }
  }
  // In-place prefix sums along each used axis.
  for (std::size_t a = 1; a < corners_[0]; ++a)
    for (std::size_t b = 0; b < corners_[1]; ++b)
      for (std::size_t c = 0; c < corners_[2]; ++c) at(a, b, c) += at(a - 1, b, c);
  for (std::size_t a = 0; a < corners_[0]; ++a)
    for (std::size_t b = 1; b < corners_[1]; ++b)
      for (std::size_t c = 0; c < corners_[2]; ++c) at(a, b, c) += at(a, b - 1, c);
  for (std::size_t a = 0; a < corners_[0]; ++a)
    for (std::size_t b = 0; b < corners_[1]; ++b)
      for (std::size_t c = 1; c < corners_[2]; ++c) at(a, b, c) += at(a, b, c - 1);
}

// Integral of the field over (-inf, x] restricted to the grid, i.e. the
// multilinear interpolant of the corner table (exact for piecewise-constant
// cells).
double WindowIntegrator::cumulative_base(const std::array<double, 3>& x) const {
  const int d = grid_.dim;
  std::array<std::size_t, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double n = static_cast<double>(grid_.shape[a]);
    double u = (x[a] - grid_.lower_edge(a)) / grid_.spacing;
    u = std::clamp(u, 0.0, n);
    double fl = std::floor(u);
    if (fl >= n) fl = n - 1.0;
    base[a] = static_cast<std::size_t>(fl);
    frac[a] = u - fl;
  }
  double acc = 0.0;
  for (int c = 0; c < (1 << d); ++c) {
    double w = 1.0;
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = 0; a < d; ++a) {
      const int bit = (c >> a) & 1;
      w *= bit ? frac[a] : 1.0 - frac[a];
      idx[a] = base[a] + static_cast<std::size_t>(bit);
    }
    if (w == 0.0) continue;
    acc += w * table_[(idx[0] * corners_[1] + idx[1]) * corners_[2] + idx[2]];
  }
  return acc;
}

double WindowIntegrator::cumulative(const std::array<double, 3>& x) const {
  if (boundary_ == Boundary::zero_outside) return cumulative_base(x);

  // Periodic extension: along each axis x = lower + k*L + r with r in [0, L).
  // The cumulative integral splits into k whole periods plus the remainder,
  // and the product structure over axes expands into 2^d terms.
  const int d = grid_.dim;
  std::array<double, 3> k{0.0, 0.0, 0.0};
  std::array<double, 3> rem{0.0, 0.0, 0.0};
  std::array<double, 3> full{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double L = grid_.extent(a);
    const double u = x[a] - grid_.lower_edge(a);
    k[a] = std::floor(u / L);
    rem[a] = grid_.lower_edge(a) + (u - k[a] * L);
    full[a] = grid_.upper_edge(a);
  }
  double acc = 0.0;
  for (int s = 0; s < (1 << d); ++s) {
    double factor = 1.0;
    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
      if ((s >> a) & 1) {
        factor *= k[a];
        y[a] = full[a];
      } else {
        y[a] = rem[a];
      }
    }
    if (factor == 0.0) continue;
    acc += factor * cumulative_base(y);
  }
  return acc;
}

double WindowIntegrator::table_integral(const std::array<double, 3>& lo,
                                        const std::array<double, 3>& hi) const {
  const int d = grid_.dim;
  double acc = 0.0;
  for (int c = 0; c < (1 << d); ++c) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    int lows = 0;
    for (int a = 0; a < d; ++a) {
      if ((c >> a) & 1) {
        x[a] = hi[a];
      } else {
        x[a] = lo[a];
        ++lows;
      }
    }
    acc += (lows % 2 == 0 ? 1.0 : -1.0) * cumulative(x);
  }
  return acc;
}

// Measure of the part of the box where the reference value applies: all of it
// for periodic fields, the part inside the grid otherwise.
double WindowIntegrator::reference_measure(const std::array<double, 3>& lo,
                                           const std::array<double, 3>& hi) const {
  double m = 1.0;
  for (int a = 0; a < grid_.dim; ++a) {
    if (boundary_ == Boundary::periodic) {
      m *= hi[a] - lo[a];
    } else {
      const double l = std::max(lo[a], grid_.lower_edge(a));
      const double h = std::min(hi[a], grid_.upper_edge(a));
      m *= std::max(0.0, h - l);
    }
  }
  return m;
}

double WindowIntegrator::integral(std::span<const double> lo, std::span<const double> hi) const {
  const int d = grid_.dim;
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d) {
    throw Error("invalid_parameter", "window corners must match field dimension");
  }
  std::array<double, 3> l{}, h{};
  std::copy(lo.begin(), lo.end(), l.begin());
  std::copy(hi.begin(), hi.end(), h.begin());
  return table_integral(l, h) + ref_ * reference_measure(l, h);
}

double WindowIntegrator::average(std::span<const double> center, double side) const {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw Error("invalid_parameter", "window side must be positive");
  }
  const int d = grid_.dim;
  if (static_cast<int>(center.size()) != d) {
    throw Error("invalid_parameter", "window centre must match field dimension");
  }
  std::array<double, 3> lo{}, hi{};
  double vol = 1.0;
  for (int a = 0; a < d; ++a) {
    lo[a] = center[a] - 0.5 * side;
    hi[a] = center[a] + 0.5 * side;
    vol *= hi[a] - lo[a];
  }
  // Written so that a window inside a constant field returns the constant
  // bit for bit: the measure ratio is exactly 1 and the table part 0.
  const double v = table_integral(lo, hi) / vol + ref_ * (reference_measure(lo, hi) / vol);
  return std::clamp(v, 0.0, 1.0);
}

double window_average(const DensityField& f, std::span<const double> center, double side) {
  return WindowIntegrator(f).average(center, side);
}

}  // namespace configdensity
