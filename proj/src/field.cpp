#include "configdensity/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "configdensity/error.hpp"

namespace configdensity {

std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "zero_outside";
}

Boundary boundary_from_string(const std::string& name) {
  if (name == "zero_outside") return Boundary::zero_outside;
  if (name == "periodic") return Boundary::periodic;
  throw Error("invalid_boundary", "unknown boundary mode '" + name + "'");
}

Grid Grid::make(std::span<const std::size_t> shape, double spacing,
                std::span<const double> origin) {
  if (shape.empty() || shape.size() > 3) {
    throw Error("invalid_grid", "dimension must be 1, 2 or 3");
  }
  if (!origin.empty() && origin.size() != shape.size()) {
    throw Error("invalid_grid", "origin length does not match shape length");
  }
  Grid g;
  g.dim = static_cast<int>(shape.size());
  for (std::size_t a = 0; a < shape.size(); ++a) {
    g.shape[a] = shape[a];
    g.origin[a] = origin.empty() ? 0.0 : origin[a];
  }
  g.spacing = spacing;
  g.validate();
  return g;
}

Grid Grid::covering(std::span<const double> lo, std::span<const double> hi,
                    double spacing) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 3) {
    throw Error("invalid_grid", "box corners must have equal length 1..3");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error("invalid_grid", "spacing must be positive");
  }
  std::vector<std::size_t> shape(lo.size());
  std::vector<double> origin(lo.size());
  for (std::size_t a = 0; a < lo.size(); ++a) {
    const double cells = (hi[a] - lo[a]) / spacing;
    const double rounded = std::round(cells);
    if (!(rounded >= 2.0) || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
      throw Error("invalid_grid", "box side is not a whole number (>= 2) of cells");
    }
    shape[a] = static_cast<std::size_t>(rounded);
    origin[a] = lo[a] + 0.5 * spacing;
  }
  return make(shape, spacing, origin);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing, dim); }

void Grid::validate() const {
  if (dim < 1 || dim > 3) throw Error("invalid_grid", "dimension must be 1, 2 or 3");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error("invalid_grid", "spacing must be finite and positive");
  }
  for (int a = 0; a < 3; ++a) {
    if (a < dim) {
      if (shape[a] < 2) throw Error("invalid_grid", "every shape entry must be >= 2");
      if (!std::isfinite(origin[a])) throw Error("invalid_grid", "origin must be finite");
    } else if (shape[a] != 1) {
      throw Error("invalid_grid", "unused axes must have shape 1");
    }
  }
}

// ---------------------------------------------------------------------------

DensityField::DensityField(Grid grid, std::vector<double> values, Boundary boundary)
    : grid_(grid), boundary_(boundary) {
  grid_.validate();
  if (values.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "expected " << grid_.size() << " values, got " << values.size();
    throw Error("invariant_violation", msg.str());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "value " << v << " at flat index " << i << " is outside [0,1]";
      throw Error("invariant_violation", msg.str());
    }
  }
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

DensityField DensityField::constant(const Grid& grid, double value, Boundary boundary) {
  return DensityField(grid, std::vector<double>(grid.size(), value), boundary);
}

double DensityField::mass() const {
  double s = 0.0;
  for (double v : *values_) s += v;
  return s * grid_.cell_volume();
}

double DensityField::squared_norm() const {
  double s = 0.0;
  for (double v : *values_) s += v * v;
  return s * grid_.cell_volume();
}

double DensityField::support_measure() const {
  const auto n = std::count_if(values_->begin(), values_->end(), [](double v) { return v > 0.0; });
  return static_cast<double>(n) * grid_.cell_volume();
}

double DensityField::max_value() const {
  return values_->empty() ? 0.0 : *std::max_element(values_->begin(), values_->end());
}

double DensityField::sample(std::span<const double> point) const {
  const int d = grid_.dim;
  std::array<long, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double u = (point[a] - grid_.origin[a]) / grid_.spacing;
    const double fl = std::floor(u);
    base[a] = static_cast<long>(fl);
    frac[a] = u - fl;
  }
  double acc = 0.0;
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::array<std::size_t, 3> idx{0, 0, 0};
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const int bit = (c >> a) & 1;
      w *= bit ? frac[a] : 1.0 - frac[a];
      long i = base[a] + bit;
      const long n = static_cast<long>(grid_.shape[a]);
      if (boundary_ == Boundary::periodic) {
        i %= n;
        if (i < 0) i += n;
      } else if (i < 0 || i >= n) {
        inside = false;
      }
      idx[a] = static_cast<std::size_t>(i);
    }
    if (w == 0.0 || !inside) continue;
    acc += w * (*values_)[grid_.index(idx[0], idx[1], idx[2])];
  }
  return std::clamp(acc, 0.0, 1.0);
}

DensityField DensityField::with_boundary(Boundary b) const {
  DensityField copy = *this;
  copy.boundary_ = b;
  return copy;
}

// ---------------------------------------------------------------------------

namespace {

bool lattice_shift(const Grid& g, std::span<const double> v, std::array<long, 3>& shift) {
  shift = {0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    const double u = v[a] / g.spacing;
    const double r = std::round(u);
    if (std::abs(u - r) > 1e-9) return false;
    shift[a] = static_cast<long>(r);
  }
  return true;
}

}  // namespace

DensityField translate(const DensityField& f, std::span<const double> v) {
  const Grid& g = f.grid();
  if (static_cast<int>(v.size()) != g.dim) {
    throw Error("invalid_parameter", "translation vector length must equal field dimension");
  }
  for (double c : v) {
    if (!std::isfinite(c)) throw Error("invalid_parameter", "translation must be finite");
  }
  std::vector<double> out(g.size(), 0.0);
  std::array<long, 3> shift{};
  if (lattice_shift(g, v, shift)) {
    const auto src = f.values();
    for (std::size_t i = 0; i < g.shape[0]; ++i) {
      for (std::size_t j = 0; j < g.shape[1]; ++j) {
        for (std::size_t k = 0; k < g.shape[2]; ++k) {
          std::array<long, 3> s{static_cast<long>(i) + shift[0], static_cast<long>(j) + shift[1],
                                static_cast<long>(k) + shift[2]};
          bool inside = true;
          for (int a = 0; a < 3; ++a) {
            const long n = static_cast<long>(g.shape[a]);
            if (f.boundary() == Boundary::periodic) {
              s[a] %= n;
              if (s[a] < 0) s[a] += n;
            } else if (s[a] < 0 || s[a] >= n) {
              inside = false;
            }
          }
          if (inside) {
            out[g.index(i, j, k)] = src[g.index(static_cast<std::size_t>(s[0]),
                                                 static_cast<std::size_t>(s[1]),
                                                 static_cast<std::size_t>(s[2]))];
          }
        }
      }
    }
    return DensityField(g, std::move(out), f.boundary());
  }

  std::array<double, 3> p{};
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      for (std::size_t k = 0; k < g.shape[2]; ++k) {
        const std::array<std::size_t, 3> idx{i, j, k};
        for (int a = 0; a < g.dim; ++a) p[a] = g.coordinate(a, idx[a]) + v[a];
        out[g.index(i, j, k)] = f.sample(std::span<const double>(p.data(), g.dim));
      }
    }
  }
  return DensityField(g, std::move(out), f.boundary());
}

DensityField rescale(const DensityField& f, double t, const std::optional<Grid>& output) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw Error("invalid_scale", "scale factor must be finite and positive");
  }
  const Grid g = output.value_or(f.grid());
  g.validate();
  if (g.dim != f.dim()) throw Error("invalid_grid", "output grid dimension differs from field");
  std::vector<double> out(g.size());
  std::array<double, 3> p{};
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      for (std::size_t k = 0; k < g.shape[2]; ++k) {
        const std::array<std::size_t, 3> idx{i, j, k};
        for (int a = 0; a < g.dim; ++a) p[a] = t * g.coordinate(a, idx[a]);
        out[g.index(i, j, k)] = f.sample(std::span<const double>(p.data(), g.dim));
      }
    }
  }
  return DensityField(g, std::move(out), f.boundary());
}

}  // namespace configdensity
