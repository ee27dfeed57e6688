#include "configdensity/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "configdensity/error.hpp"

namespace configdensity {

BoundReport make_report(std::string name, double lhs, double rhs, double slack,
                        std::string detail) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + slack;
  r.detail = std::move(detail);
  return r;
}

SmoothingParams choose_smoothing_params(double delta, double M) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error("invalid_delta", "delta must lie in (0, 1]");
  if (!(M > 0.0) || !std::isfinite(M)) throw Error("invalid_parameter", "M must be positive");
  const double d3 = delta * delta * delta;
  const double base = d3 / 14.0;
  return {0.5 * base * base * base, 168.0 * M / d3};
}

DeclaredSupport DeclaredSupport::make_box(std::vector<double> lo, std::vector<double> hi) {
  DeclaredSupport s;
  s.shape = Shape::box;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

DeclaredSupport DeclaredSupport::make_ball(std::vector<double> center, double radius) {
  DeclaredSupport s;
  s.shape = Shape::ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

double DeclaredSupport::measure(int dim) const {
  if (shape == Shape::box) {
    double m = 1.0;
    for (int a = 0; a < dim; ++a) m *= hi[a] - lo[a];
    return m;
  }
  switch (dim) {
    case 1: return 2.0 * radius;
    case 2: return std::numbers::pi * radius * radius;
    default: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  }
}

bool DeclaredSupport::contains(std::span<const double> p) const {
  if (shape == Shape::box) {
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (p[a] < lo[a] || p[a] > hi[a]) return false;
    }
    return true;
  }
  double r2 = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) r2 += (p[a] - center[a]) * (p[a] - center[a]);
  return r2 <= radius * radius;
}

std::vector<BoundReport> d1_d4_gap_check(const DensityField& f, const std::vector<double>& alphas,
                                         double t, double delta, double M,
                                         const DeclaredSupport& support,
                                         const QuadratureOptions& q) {
  const Grid& g = f.grid();
  const auto need = static_cast<std::size_t>(g.dim);
  const bool shape_ok = support.shape == DeclaredSupport::Shape::box
                            ? support.lo.size() == need && support.hi.size() == need
                            : support.center.size() == need && support.radius > 0.0;
  if (!shape_ok) throw Error("support_mismatch", "declared support does not match the field dimension");
  std::array<double, 3> p{};
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      for (std::size_t k = 0; k < g.shape[2]; ++k) {
        if (f.at(i, j, k) == 0.0) continue;
        const std::array<std::size_t, 3> idx{i, j, k};
        for (int a = 0; a < g.dim; ++a) p[a] = g.coordinate(a, idx[a]);
        if (!support.contains(std::span<const double>(p.data(), need))) {
          throw Error("support_mismatch", "field is nonzero outside the declared support");
        }
      }
    }
  }

  const SmoothingParams sp = choose_smoothing_params(delta, M);
  const double mB = support.measure(g.dim);
  const double gap = smoothing_gap(f, t * sp.lambda1, t * sp.lambda2);
  const double d4 = triangle_d4(f, sp.lambda2, t, q).value;

  std::vector<BoundReport> out;
  for (double alpha : alphas) {
    if (!(alpha > 0.0 && alpha <= M)) {
      throw Error("invalid_parameter", "alpha must lie in (0, M]");
    }
    const double d1 = triangle_d1(f, alpha, t, q).value;
    std::ostringstream name;
    name << "d1_d4_gap(alpha=" << alpha << ")";
    BoundReport r = make_report(name.str(), std::abs(d1 - d4),
                                delta * delta * delta * mB / 7.0 + gap, 1e-6 * mB);
    r.extras = {{"d1", d1}, {"d4", d4}, {"smoothing_gap", gap}, {"m(B)", mB},
                {"lambda1", sp.lambda1}, {"lambda2", sp.lambda2}};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace configdensity
