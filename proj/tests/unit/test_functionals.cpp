#include <doctest.h>

#include <cmath>
#include <numbers>

#include "configdensity/functionals.hpp"
#include "configdensity/generators.hpp"
#include "configdensity/measures.hpp"
#include "configdensity/spectral.hpp"
#include "helpers.hpp"

using namespace configdensity;
using testing::error_code;
using testing::square;

constexpr double kPi = std::numbers::pi;

namespace {

DensityField disk(double r, double half, double h) {
  GeneratorSpec s;
  s.kind = GeneratorKind::ball;
  s.delta = 1.0;
  s.radius = r;
  s.center = {0.0, 0.0};
  return generate(s, square(-half, half, h));
}

// Area of the intersection of two unit-radius-R disks at distance t.
double lens(double R, double t) {
  return 2.0 * R * R * std::acos(t / (2.0 * R)) - 0.5 * t * std::sqrt(4.0 * R * R - t * t);
}

double read(const DensityField& f, double x, double y) {
  const std::array<double, 2> p{x, y};
  return f.sample(p);
}

// Direct sums through DensityField::sample, independent of the lattice
// kernels.
double brute_pair(const DensityField& f, double t, std::size_t n) {
  const Grid& g = f.grid();
  const auto cq = circle_quadrature(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      const double x = g.coordinate(0, i), y = g.coordinate(1, j);
      double inner = 0.0;
      for (const auto& u : cq.nodes) inner += read(f, x - t * u[0], y - t * u[1]);
      acc += f.at(i, j) * inner * cq.weight;
    }
  }
  return acc * g.cell_volume();
}

double brute_triangle(const DensityField& f, double alpha, double t, std::size_t n, std::size_t m) {
  const Grid& g = f.grid();
  const auto cq = circle_quadrature(n);
  const auto rq = ray_quadrature(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      const double x = g.coordinate(0, i), y = g.coordinate(1, j);
      for (std::size_t c = 0; c < cq.size(); ++c) {
        const auto& u = cq.nodes[c];
        const auto& p = cq.perp[c];
        const double second = read(f, x + t * u[0], y + t * u[1]);
        double ray = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double s = rq.nodes[k];
          ray += rq.weights[k] * read(f, x + t * (2.0 * alpha * p[0] + s * u[0]),
                                      y + t * (2.0 * alpha * p[1] + s * u[1]));
        }
        acc += f.at(i, j) * second * ray * cq.weight;
      }
    }
  }
  return acc * g.cell_volume();
}

double brute_colinear(const DensityField& f, double t, std::size_t n) {
  const Grid& g = f.grid();
  const auto cq = circle_quadrature(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      const double x = g.coordinate(0, i), y = g.coordinate(1, j);
      for (const auto& u : cq.nodes) {
        acc += f.at(i, j) * read(f, x + t * u[0], y + t * u[1]) *
               read(f, x + 2.0 * t * u[0], y + 2.0 * t * u[1]) * cq.weight;
      }
    }
  }
  return acc * g.cell_volume();
}

}  // namespace

TEST_CASE("pair correlation of a disk is the lens area") {
  const auto f = disk(1.0, 2.0, 1.0 / 128.0);
  for (double t : {0.5, 1.0, 1.5}) {
    CHECK(pair_correlation(f, t, Method::spatial).value == doctest::Approx(lens(1.0, t)).epsilon(0.01));
    CHECK(pair_correlation(f, t, Method::spectral).value == doctest::Approx(lens(1.0, t)).epsilon(0.01));
  }
  CHECK(pair_correlation(f, 2.5, Method::spatial).value == 0.0);
}

TEST_CASE("lattice kernels agree with direct interpolated sums") {
  QuadratureOptions q;
  q.circle_nodes = 16;
  q.ray_nodes = 8;
  for (auto boundary : {Boundary::zero_outside, Boundary::periodic}) {
    const auto f = testing::uniform_noise(square(0.0, 4.0, 0.25), 31, boundary);
    for (double t : {0.3, 1.0, 2.7}) {
      CHECK(pair_correlation(f, t, Method::spatial, q).value ==
            doctest::Approx(brute_pair(f, t, 16)).epsilon(1e-12));
      CHECK(colinear_triple(f, t, 16).value == doctest::Approx(brute_colinear(f, t, 16)).epsilon(1e-12));
      CHECK(triangle_d1(f, 0.35, t, q).value ==
            doctest::Approx(brute_triangle(f, 0.35, t, 16, 8)).epsilon(1e-12));
    }
  }
}

TEST_CASE("pair correlation at zero scale is the squared norm") {
  const auto f = testing::uniform_noise(square(0.0, 2.0, 0.25), 3);
  CHECK(pair_correlation(f, 0.0, Method::spatial).value == doctest::Approx(f.squared_norm()));
  CHECK(error_code([&] { pair_correlation(f, -1.0, Method::spatial); }) == "invalid_scale");
  CHECK(error_code([&] { pair_correlation(f.with_boundary(Boundary::periodic), 1.0, Method::spectral); }) ==
        "requires_compact_support");
}

TEST_CASE("pair correlation is monotone in the field (property)") {
  const Grid g = square(0.0, 6.0, 0.25);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto f = testing::uniform_noise(g, seed);
    const auto extra = testing::uniform_noise(g, seed + 100);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::max(f[i], extra[i]);
    const DensityField bigger(g, std::move(v));
    for (double t : {0.5, 2.0}) {
      REQUIRE(pair_correlation(f, t, Method::spatial).value <=
              pair_correlation(bigger, t, Method::spatial).value);
    }
  }
}

TEST_CASE("functionals are invariant under lattice translation") {
  const Grid g = square(-4.0, 4.0, 0.125);
  GeneratorSpec s;
  s.kind = GeneratorKind::bernoulli_cells;
  s.delta = 0.5;
  s.cell = 0.5;
  s.lo = {-2.0, -2.0};
  s.hi = {1.0, 1.0};
  s.seed = 4;
  const auto f = generate(s, g);
  const std::vector<double> v{-1.0, -0.5};
  const auto moved = translate(f, v);
  CHECK(pair_correlation(moved, 1.3, Method::spatial).value ==
        doctest::Approx(pair_correlation(f, 1.3, Method::spatial).value).epsilon(1e-12));
  CHECK(triangle_d1(moved, 0.4, 1.0).value == doctest::Approx(triangle_d1(f, 0.4, 1.0).value).epsilon(1e-12));
}

TEST_CASE("triangle functional of a large constant disk approaches delta^3 m(B)") {
  const double delta = 0.5, r = 8.0;
  GeneratorSpec s;
  s.kind = GeneratorKind::ball;
  s.delta = delta;
  s.radius = r;
  s.center = {0.0, 0.0};
  const auto f = generate(s, square(-12.0, 12.0, 0.125));
  const double ratio = triangle_d1(f, 0.5, 1.0).value / (kPi * r * r);
  CHECK(ratio < delta * delta * delta);
  CHECK(ratio > 6.0 / 7.0 * delta * delta * delta * 0.9);
}

TEST_CASE("smoothed triangle functional tends to the pair correlation of an indicator") {
  // For g = chi_B, g(x) (g * P_lambda)(x) -> g(x) as lambda -> 0.
  const auto f = disk(3.0, 6.0, 0.125);
  const double pair = pair_correlation(f, 1.0, Method::spatial).value;
  const double d4 = triangle_d4(f, 1e-4, 1.0).value;
  CHECK(d4 == doctest::Approx(pair).epsilon(0.02));
  CHECK(triangle_d4(f, 2.0, 1.0).value < d4);
  CHECK(smoothing_gap(f, 0.0, 0.0) == 0.0);
  CHECK(smoothing_gap(f, 0.1, 2.0) > 0.0);
  CHECK(error_code([&] { smoothing_gap(f, -1.0, 2.0); }) == "invalid_lambda");
}

TEST_CASE("functional argument checks") {
  const auto f = testing::uniform_noise(square(0.0, 2.0, 0.25), 1);
  CHECK(error_code([&] { triangle_d1(f, 0.0, 1.0); }) == "invalid_parameter");
  CHECK(error_code([&] { triangle_d1(f, 0.5, -1.0); }) == "invalid_parameter");
  CHECK(error_code([&] { colinear_triple(f, 0.0); }) == "invalid_scale");
  const std::vector<double> lo1{0.0}, hi1{2.0};
  const auto line = testing::uniform_noise(Grid::covering(lo1, hi1, 0.25), 1);
  CHECK(error_code([&] { colinear_triple(line, 1.0); }) == "requires_d_ge_2");
  CHECK(error_code([&] { pair_correlation(line, 1.0, Method::spatial); }) == "circle_measure_requires_2d");
}

TEST_CASE("colinear triples in three dimensions") {
  const auto f = DensityField::constant(testing::square(-3.0, 3.0, 0.25, 3), 0.5);
  const double v = colinear_triple(f, 0.5, 64).value;
  // Points x, x + t y, x + 2 t y all inside the cube [-3, 3]^3: the value is
  // delta^3 times the mean volume of {x : x + 2 t y in cube}, at most 6^3.
  CHECK(v > 0.0);
  CHECK(v <= 0.125 * 216.0);
  CHECK(v > 0.125 * 5.0 * 5.0 * 5.0);
}
