#include "configdensity/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "configdensity/error.hpp"
#include "fft.hpp"

namespace configdensity {

namespace {

using cplx = std::complex<double>;

Grid padded_grid(const Grid& g, std::size_t pad) {
  Grid out = g;
  for (int a = 0; a < g.dim; ++a) out.shape[a] = g.shape[a] * pad;
  return out;
}

Spectrum transform_values(const Grid& src, std::span<const double> vals, std::size_t pad) {
  if (pad == 0) throw Error("invalid_parameter", "padding factor must be positive");
  Spectrum s;
  s.grid = padded_grid(src, pad);
  s.source_spacing = src.spacing;
  const auto& P = s.grid.shape;
  for (int a = 0; a < src.dim; ++a) {
    s.freq_step[a] = 1.0 / (static_cast<double>(P[a]) * src.spacing);
  }

  s.values.assign(s.grid.size(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < src.shape[0]; ++i)
    for (std::size_t j = 0; j < src.shape[1]; ++j)
      for (std::size_t k = 0; k < src.shape[2]; ++k)
        s.values[s.grid.index(i, j, k)] = vals[src.index(i, j, k)];

  detail::fft_inplace(s.values, s.grid.shape, s.grid.dim, -1);

  // h^d scaling and the origin phase e^{-2 pi i <origin, xi>}.
  const double vol = src.cell_volume();
  const bool zero_origin = std::all_of(src.origin.begin(), src.origin.end(),
                                       [](double o) { return o == 0.0; });
  for (std::size_t i = 0; i < P[0]; ++i) {
    for (std::size_t j = 0; j < P[1]; ++j) {
      for (std::size_t k = 0; k < P[2]; ++k) {
        cplx factor(vol, 0.0);
        if (!zero_origin) {
          const std::array<std::size_t, 3> idx{i, j, k};
          double phase = 0.0;
          for (int a = 0; a < src.dim; ++a) phase += src.origin[a] * s.frequency(a, idx[a]);
          factor = vol * std::polar(1.0, -2.0 * std::numbers::pi * phase);
        }
        s.values[s.grid.index(i, j, k)] *= factor;
      }
    }
  }
  return s;
}

template <class Fn>
Spectrum map_radius(const Spectrum& s, Fn&& m) {
  Spectrum out = s;
  const auto& P = s.grid.shape;
  for (std::size_t i = 0; i < P[0]; ++i) {
    const double f0 = s.frequency(0, i);
    for (std::size_t j = 0; j < P[1]; ++j) {
      const double f1 = s.grid.dim >= 2 ? s.frequency(1, j) : 0.0;
      for (std::size_t k = 0; k < P[2]; ++k) {
        const double f2 = s.grid.dim >= 3 ? s.frequency(2, k) : 0.0;
        const double r = std::sqrt(f0 * f0 + f1 * f1 + f2 * f2);
        out.values[s.grid.index(i, j, k)] *= m(r);
      }
    }
  }
  return out;
}

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw Error("invalid_lambda", "lambda must be finite and non-negative");
  }
}

}  // namespace

double RealField::sum_times_volume() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double Spectrum::radius(std::size_t flat) const noexcept {
  const std::size_t k = flat % grid.shape[2];
  const std::size_t j = (flat / grid.shape[2]) % grid.shape[1];
  const std::size_t i = flat / (grid.shape[1] * grid.shape[2]);
  const std::array<std::size_t, 3> idx{i, j, k};
  double r2 = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    const double f = frequency(a, idx[a]);
    r2 += f * f;
  }
  return std::sqrt(r2);
}

double Spectrum::energy() const {
  double s = 0.0;
  for (const auto& c : values) s += std::norm(c);
  double cell = 1.0;
  for (int a = 0; a < grid.dim; ++a) cell *= freq_step[a];
  return s * cell;
}

Spectrum forward_transform(const DensityField& f, std::size_t pad) {
  if (pad == 0) pad = f.boundary() == Boundary::periodic ? 1 : 2;
  return transform_values(f.grid(), f.values(), pad);
}

Spectrum forward_transform(const RealField& f, std::size_t pad) {
  return transform_values(f.grid, f.values, pad);
}

RealField inverse_transform(const Spectrum& s) {
  std::vector<cplx> work = s.values;
  const Grid& g = s.grid;
  const double vol = std::pow(s.source_spacing, g.dim);
  const bool zero_origin = std::all_of(g.origin.begin(), g.origin.end(),
                                       [](double o) { return o == 0.0; });
  const auto& P = g.shape;
  for (std::size_t i = 0; i < P[0]; ++i) {
    for (std::size_t j = 0; j < P[1]; ++j) {
      for (std::size_t k = 0; k < P[2]; ++k) {
        cplx factor(1.0 / vol, 0.0);
        if (!zero_origin) {
          const std::array<std::size_t, 3> idx{i, j, k};
          double phase = 0.0;
          for (int a = 0; a < g.dim; ++a) phase += g.origin[a] * s.frequency(a, idx[a]);
          factor = std::polar(1.0 / vol, 2.0 * std::numbers::pi * phase);
        }
        work[g.index(i, j, k)] *= factor;
      }
    }
  }
  detail::fft_inplace(work, g.shape, g.dim, +1);
  RealField out{g, std::vector<double>(g.size())};
  const double norm = 1.0 / static_cast<double>(g.size());
  for (std::size_t n = 0; n < work.size(); ++n) out.values[n] = work[n].real() * norm;
  return out;
}

RealField crop(const RealField& f, const Grid& target) {
  for (int a = 0; a < target.dim; ++a) {
    if (target.shape[a] > f.grid.shape[a]) {
      throw Error("invalid_grid", "crop target exceeds source grid");
    }
  }
  RealField out{target, std::vector<double>(target.size())};
  for (std::size_t i = 0; i < target.shape[0]; ++i)
    for (std::size_t j = 0; j < target.shape[1]; ++j)
      for (std::size_t k = 0; k < target.shape[2]; ++k)
        out.values[target.index(i, j, k)] = f.values[f.grid.index(i, j, k)];
  return out;
}

Spectrum radial_multiplier(const Spectrum& s, const std::function<double(double)>& m) {
  return map_radius(s, m);
}

Spectrum circle_multiplier(const Spectrum& s, double t, J0Function j0) {
  if (s.dim() != 2) {
    throw Error("circle_measure_requires_2d", "the circle multiplier is defined for d = 2");
  }
  if (!std::isfinite(t) || t < 0.0) throw Error("invalid_scale", "t must be finite and >= 0");
  const double c = 2.0 * std::numbers::pi * t;
  return map_radius(s, [&](double r) { return j0(c * r); });
}

Spectrum poisson_multiplier(const Spectrum& s, double lambda) {
  check_lambda(lambda);
  return map_radius(s, [&](double r) { return std::exp(-lambda * r); });
}

double poisson_kernel(int dim, double lambda, double r) {
  check_lambda(lambda);
  const double y = lambda / (2.0 * std::numbers::pi);
  double c = 0.0;
  switch (dim) {
    case 1: c = 1.0 / std::numbers::pi; break;
    case 2: c = 1.0 / (2.0 * std::numbers::pi); break;
    case 3: c = 1.0 / (std::numbers::pi * std::numbers::pi); break;
    default: throw Error("invalid_parameter", "dimension must be 1, 2 or 3");
  }
  return c * y / std::pow(y * y + r * r, 0.5 * (dim + 1));
}

SmoothingResult poisson_smooth_report(const DensityField& f, double lambda) {
  check_lambda(lambda);
  if (lambda == 0.0) {
    RealField raw{f.grid(), {f.values().begin(), f.values().end()}};
    return {f, raw, f.mass(), 0.0};
  }
  const Spectrum s = poisson_multiplier(forward_transform(f), lambda);
  const RealField full = inverse_transform(s);
  RealField raw = crop(full, f.grid());
  double max_clamp = 0.0;
  std::vector<double> clamped(raw.values.size());
  for (std::size_t n = 0; n < clamped.size(); ++n) {
    const double v = raw.values[n];
    clamped[n] = std::clamp(v, 0.0, 1.0);
    max_clamp = std::max(max_clamp, std::abs(v - clamped[n]));
  }
  return {DensityField(f.grid(), std::move(clamped), f.boundary()), std::move(raw),
          full.sum_times_volume(), max_clamp};
}

DensityField poisson_smooth(const DensityField& f, double lambda) {
  return poisson_smooth_report(f, lambda).field;
}

}  // namespace configdensity
