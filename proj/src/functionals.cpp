#include "configdensity/functionals.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "configdensity/error.hpp"
#include "configdensity/measures.hpp"
#include "configdensity/parallel.hpp"
#include "configdensity/spectral.hpp"
#include "lattice_kernels.hpp"

namespace configdensity {

namespace {

using Clock = std::chrono::steady_clock;
using detail::Lattice;

std::int64_t since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

void require_2d(const DensityField& f) {
  if (f.dim() != 2) {
    throw Error("circle_measure_requires_2d", "this functional is defined for d = 2 fields");
  }
}

double ordered_sum(const std::vector<double>& parts) {
  CompensatedSum s;
  for (double p : parts) s.add(p);
  return s.value();
}

std::size_t circle_size(const QuadratureOptions& q, double radius, double h) {
  return q.circle_nodes > 0 ? q.circle_nodes : circle_nodes_for_radius(radius, h);
}

}  // namespace

std::string to_string(Method m) { return m == Method::spectral ? "spectral" : "spatial"; }

Method method_from_string(const std::string& name) {
  if (name == "spatial") return Method::spatial;
  if (name == "spectral") return Method::spectral;
  throw Error("invalid_parameter", "unknown method '" + name + "'");
}

FunctionalResult pair_correlation(const DensityField& f, double t, Method method,
                                  const QuadratureOptions& q) {
  const auto start = Clock::now();
  require_2d(f);
  if (!std::isfinite(t) || t < 0.0) throw Error("invalid_scale", "t must be finite and >= 0");
  FunctionalResult r;
  r.name = "pair";
  r.method = method;
  r.t = t;
  r.grid = f.grid();

  if (method == Method::spectral) {
    if (f.boundary() == Boundary::periodic) {
      throw Error("requires_compact_support",
                  "the spectral pair functional needs a zero_outside field");
    }
    const Spectrum s = forward_transform(f, 2);
    const double c = 2.0 * std::numbers::pi * t;
    const auto& P = s.grid.shape;
    std::vector<double> rows(P[0], 0.0);
    parallel_for(P[0], [&](std::size_t i) {
      const double f0 = s.frequency(0, i);
      double acc = 0.0;
      for (std::size_t j = 0; j < P[1]; ++j) {
        const double f1 = s.frequency(1, j);
        acc += std::norm(s.values[s.grid.index(i, j)]) * q.j0(c * std::sqrt(f0 * f0 + f1 * f1));
      }
      rows[i] = acc;
    });
    r.value = ordered_sum(rows) * s.freq_step[0] * s.freq_step[1];
    r.elapsed_ns = since(start);
    return r;
  }

  const Grid& g = f.grid();
  const Lattice lat = detail::make_lattice(g, f.boundary(), f.values());
  if (t == 0.0) {
    r.value = f.squared_norm();
    r.circle_nodes = 1;
    r.elapsed_ns = since(start);
    return r;
  }
  const CircleQuadrature cq = circle_quadrature(circle_size(q, t, g.spacing));
  std::vector<double> parts(cq.size(), 0.0);
  parallel_for(cq.size(), [&](std::size_t j) {
    const auto& y = cq.nodes[j];
    parts[j] = detail::shifted_dot(lat, lat, {-t * y[0], -t * y[1], 0.0});
  });
  r.value = ordered_sum(parts) * cq.weight * g.cell_volume();
  r.circle_nodes = cq.size();
  r.elapsed_ns = since(start);
  return r;
}

FunctionalResult triangle_d1(const DensityField& f, double alpha, double t,
                             const QuadratureOptions& q) {
  const auto start = Clock::now();
  require_2d(f);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error("invalid_parameter", "alpha must be finite and positive");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("invalid_parameter", "t must be finite and positive");

  const Grid& g = f.grid();
  const Lattice lat = detail::make_lattice(g, f.boundary(), f.values());
  const CircleQuadrature cq = circle_quadrature(circle_size(q, t, g.spacing));
  const RayQuadrature rq = ray_quadrature(q.ray_nodes);

  std::vector<double> parts(cq.size(), 0.0);
  parallel_for(cq.size(), [&](std::size_t j) {
    const auto& y = cq.nodes[j];
    const auto& yp = cq.perp[j];
    std::vector<double> prod;
    detail::shifted_product(lat, lat, {t * y[0], t * y[1], 0.0}, prod);
    const Lattice pl = detail::make_lattice(g, f.boundary(), prod);
    if (pl.support.empty()) return;
    CompensatedSum acc;
    for (std::size_t i = 0; i < rq.size(); ++i) {
      const double s = rq.nodes[i];
      const double vx = t * (2.0 * alpha * yp[0] + s * y[0]);
      const double vy = t * (2.0 * alpha * yp[1] + s * y[1]);
      // Triangle (0, t y, v): half the cross product must equal alpha t^2.
      const double area = 0.5 * std::abs(t * y[0] * vy - t * y[1] * vx);
      if (std::abs(area - alpha * t * t) > 1e-9 * alpha * t * t) {
        throw Error("invariant_violation", "sampled triangle has the wrong area");
      }
      acc.add(rq.weights[i] * detail::shifted_dot(pl, lat, {vx, vy, 0.0}));
    }
    parts[j] = acc.value();
  });

  FunctionalResult r;
  r.name = "d1";
  r.method = Method::spatial;
  r.t = t;
  r.alpha = alpha;
  r.grid = g;
  r.circle_nodes = cq.size();
  r.ray_nodes = rq.size();
  r.value = ordered_sum(parts) * cq.weight * g.cell_volume();
  r.elapsed_ns = since(start);
  return r;
}

FunctionalResult triangle_d4(const DensityField& f, double lambda2, double t,
                             const QuadratureOptions& q) {
  const auto start = Clock::now();
  require_2d(f);
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("invalid_parameter", "t must be finite and positive");
  if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) {
    throw Error("invalid_lambda", "lambda2 must be finite and positive");
  }
  const Grid& g = f.grid();
  const SmoothingResult sm = poisson_smooth_report(f, t * lambda2);
  std::vector<double> weighted(g.size());
  for (std::size_t n = 0; n < weighted.size(); ++n) weighted[n] = f[n] * sm.raw.values[n];

  const Lattice lat = detail::make_lattice(g, f.boundary(), f.values());
  const Lattice wl = detail::make_lattice(g, f.boundary(), weighted);
  const CircleQuadrature cq = circle_quadrature(circle_size(q, t, g.spacing));
  std::vector<double> parts(cq.size(), 0.0);
  parallel_for(cq.size(), [&](std::size_t j) {
    const auto& y = cq.nodes[j];
    parts[j] = detail::shifted_dot(wl, lat, {t * y[0], t * y[1], 0.0});
  });

  FunctionalResult r;
  r.name = "d4";
  r.method = Method::spatial;
  r.t = t;
  r.grid = g;
  r.circle_nodes = cq.size();
  r.value = ordered_sum(parts) * cq.weight * g.cell_volume();
  r.elapsed_ns = since(start);
  return r;
}

double smoothing_gap(const DensityField& f, double lambda1, double lambda2) {
  for (double l : {lambda1, lambda2}) {
    if (!std::isfinite(l) || l < 0.0) throw Error("invalid_lambda", "lambda must be >= 0");
  }
  if (lambda1 == lambda2) return 0.0;
  const Spectrum s = radial_multiplier(forward_transform(f), [&](double r) {
    return std::exp(-lambda1 * r) - std::exp(-lambda2 * r);
  });
  const RealField diff = inverse_transform(s);
  CompensatedSum acc;
  for (double v : diff.values) acc.add(std::abs(v));
  return acc.value() * diff.grid.cell_volume();
}

FunctionalResult colinear_triple(const DensityField& f, double t, std::size_t n_dirs) {
  const auto start = Clock::now();
  if (f.dim() < 2) throw Error("requires_d_ge_2", "colinear triples need d >= 2");
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("invalid_scale", "t must be finite and positive");
  const Grid& g = f.grid();
  const int d = g.dim;

  std::vector<std::array<double, 3>> dirs;
  if (d == 2) {
    const std::size_t n = n_dirs > 0 ? n_dirs : circle_nodes_for_radius(2.0 * t, g.spacing);
    for (const auto& y : circle_quadrature(n).nodes) dirs.push_back({y[0], y[1], 0.0});
  } else {
    for (const auto& y : sphere_directions(n_dirs > 0 ? n_dirs : 512)) dirs.push_back(y);
  }

  const Lattice lat = detail::make_lattice(g, f.boundary(), f.values());
  std::vector<double> parts(dirs.size(), 0.0);
  parallel_for(dirs.size(), [&](std::size_t j) {
    const auto& y = dirs[j];
    std::vector<double> prod;
    detail::shifted_product(lat, lat, {t * y[0], t * y[1], t * y[2]}, prod);
    const Lattice pl = detail::make_lattice(g, f.boundary(), prod);
    if (pl.support.empty()) return;
    parts[j] = detail::shifted_dot(pl, lat, {2.0 * t * y[0], 2.0 * t * y[1], 2.0 * t * y[2]});
  });

  FunctionalResult r;
  r.name = "colinear";
  r.method = Method::spatial;
  r.t = t;
  r.grid = g;
  r.circle_nodes = dirs.size();
  r.value = ordered_sum(parts) / static_cast<double>(dirs.size()) * g.cell_volume();
  r.elapsed_ns = since(start);
  return r;
}

}  // namespace configdensity
