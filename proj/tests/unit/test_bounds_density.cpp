#include <doctest.h>

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "configdensity/bounds.hpp"
#include "configdensity/density.hpp"
#include "configdensity/generators.hpp"
#include "configdensity/stationary.hpp"
#include "helpers.hpp"

using namespace configdensity;
using testing::error_code;
using testing::square;

constexpr double kPi = std::numbers::pi;

TEST_CASE("smoothing parameters satisfy both strict conditions (property)") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double delta = 1e-3 + (1.0 - 1e-3) * u(rng);
    const double M = 0.01 + 10.0 * u(rng);
    const auto p = choose_smoothing_params(delta, M);
    const double d3 = delta * delta * delta;
    REQUIRE(2.0 * std::cbrt(p.lambda1) < d3 / 7.0);
    REQUIRE(12.0 * M / p.lambda2 < d3 / 7.0);
    REQUIRE(p.lambda1 < p.lambda2);
  }
  CHECK(error_code([] { choose_smoothing_params(0.0, 1.0); }) == "invalid_delta");
  CHECK(error_code([] { choose_smoothing_params(1.5, 1.0); }) == "invalid_delta");
  CHECK(error_code([] { choose_smoothing_params(0.5, 0.0); }) == "invalid_parameter");
}

TEST_CASE("reports pass on lhs <= rhs + slack") {
  CHECK(make_report("a", 1.0, 1.0).passed);
  CHECK_FALSE(make_report("b", 1.1, 1.0).passed);
  CHECK(make_report("c", 1.1, 1.0, 0.2).passed);
  CHECK_FALSE(make_report("d", std::nan(""), 1.0).passed);
  CHECK(make_report("e", 0.25, 1.0).margin == 0.75);
}

TEST_CASE("declared supports") {
  const auto ball = DeclaredSupport::make_ball({0.0, 0.0}, 2.0);
  CHECK(ball.measure(2) == doctest::Approx(4.0 * kPi));
  CHECK(ball.measure(3) == doctest::Approx(4.0 / 3.0 * kPi * 8.0));
  const auto box = DeclaredSupport::make_box({0.0, 1.0}, {2.0, 4.0});
  CHECK(box.measure(2) == doctest::Approx(6.0));
  const std::array<double, 2> in{1.0, 2.0}, out{3.0, 2.0};
  CHECK(box.contains(in));
  CHECK_FALSE(box.contains(out));
}

TEST_CASE("gap check refuses fields outside the declared support") {
  const auto f = DensityField::constant(square(-2.0, 2.0, 0.25), 0.5);
  const auto support = DeclaredSupport::make_ball({0.0, 0.0}, 1.0);
  CHECK(error_code([&] { d1_d4_gap_check(f, {0.5}, 1.0, 0.5, 1.0, support); }) == "support_mismatch");
}

TEST_CASE("gap check on a small ball reports its ingredients") {
  GeneratorSpec s;
  s.kind = GeneratorKind::ball;
  s.delta = 0.5;
  s.radius = 4.0;
  s.center = {0.0, 0.0};
  const auto f = generate(s, square(-8.0, 8.0, 0.125));
  const auto reps = d1_d4_gap_check(f, {0.25, 1.0}, 1.0, 0.5, 1.0, DeclaredSupport::make_ball({0.0, 0.0}, 4.0));
  REQUIRE(reps.size() == 2);
  for (const auto& r : reps) {
    CHECK(r.passed);
    CHECK(r.extras.size() == 6);
  }
}

TEST_CASE("Banach density of constant and periodic fields") {
  const auto c = DensityField::constant(square(0.0, 16.0, 0.25), 0.61);
  CHECK(banach_density(c, {2.0, 4.0, 8.0}).estimate == 0.61);

  GeneratorSpec sq;
  sq.kind = GeneratorKind::periodic_squares;
  sq.delta = 1.0;
  sq.period = 2.0;
  sq.side = 1.0;
  const auto p = generate(sq, square(0.0, 32.0, 0.25), Boundary::periodic);
  CHECK(banach_density(p, {4.0, 8.0, 16.0, 32.0}).estimate == doctest::Approx(0.25).epsilon(1e-9));
  // A window of side 1 can sit on a whole square.
  CHECK(banach_density(p, {1.0}, {0.25, 1, false}).estimate == doctest::Approx(1.0));
}

TEST_CASE("Banach density sees a dense corner that the origin window misses") {
  GeneratorSpec s;
  s.kind = GeneratorKind::constant_on_box;
  s.delta = 1.0;
  s.lo = {0.0, 0.0};
  s.hi = {4.0, 4.0};
  const auto f = generate(s, square(0.0, 32.0, 0.5));
  CHECK(banach_density(f, {2.0, 4.0}).estimate == doctest::Approx(1.0));
  BanachOptions origin;
  origin.origin_only = true;
  CHECK(banach_density(f, {2.0, 4.0}, origin).estimate == doctest::Approx(0.0));
  CHECK(error_code([&] { banach_density(f, {64.0}); }) == "window_too_large");
  CHECK(error_code([&] { banach_density(f, {4.0, 2.0}); }) == "invalid_parameter");
}

TEST_CASE("window sandwich stays within the geometric bound (property)") {
  const Grid g = square(0.0, 48.0, 0.25);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorSpec s;
    s.kind = GeneratorKind::bernoulli_cells;
    s.delta = 0.4;
    s.cell = 0.75;
    s.seed = seed;
    const auto f = generate(s, g);
    const std::array<double, 2> lo{0.5 + 0.1 * static_cast<double>(seed), 1.0};
    for (int n : {2, 4, 8, 16}) {
      const auto rep = window_sandwich_check(f, lo, 0.5, n);
      REQUIRE(rep.passed);
    }
  }
  const auto f = DensityField::constant(g, 0.5);
  const std::array<double, 2> lo{1.0, 1.0};
  CHECK(error_code([&] { window_sandwich_check(f, lo, 0.5, 1); }) == "n_below_threshold");
  // A constant field has no discrepancy at all away from the boundary.
  CHECK(window_sandwich_check(f, lo, 0.5, 8).lhs == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("stationary Bernoulli tiling: determinism, values and mean") {
  StationaryModel m;
  m.delta = 0.3;
  m.level = 0.8;
  m.seed = 5;
  const Grid g = square(-32.0, 32.0, 0.5);
  const auto a = sample_stationary(m, g);
  const auto b = sample_stationary(m, g);
  CHECK(a.boundary() == Boundary::periodic);
  std::size_t filled = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    REQUIRE(a[i] == b[i]);
    REQUIRE((a[i] == 0.0 || a[i] == 0.8));
    filled += a[i] > 0.0;
  }
  // 4096 independent unit tiles, each covering 4 samples.
  const double tiles = static_cast<double>(filled) / 4.0;
  boost::math::binomial_distribution<double> law(4096.0, 0.3);
  CHECK(tiles >= boost::math::quantile(law, 1e-6));
  CHECK(tiles <= boost::math::quantile(law, 1.0 - 1e-6));
  CHECK(m.mean(2) == doctest::Approx(0.24));

  m.cell = 3.0;
  CHECK(error_code([&] { sample_stationary(m, g); }) == "extent_not_multiple");
}

TEST_CASE("stationary Poisson balls match their coverage mean") {
  StationaryModel m;
  m.kind = StationaryModel::Kind::poisson_balls;
  m.intensity = 0.05;
  m.radius = 1.5;
  m.level = 1.0;
  double acc = 0.0;
  const Grid g = square(0.0, 64.0, 0.25);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    m.seed = seed;
    acc += sample_stationary(m, g).mass() / (64.0 * 64.0) / 10.0;
  }
  CHECK(acc == doctest::Approx(m.mean(2)).epsilon(0.05));
}

TEST_CASE("scaled cube integral of a constant field") {
  const auto f = DensityField::constant(square(-16.0, 16.0, 0.25), 0.4);
  const std::array<double, 2> lo{-1.0, 0.5};
  for (double t : {0.5, 2.0, 7.0}) {
    CHECK(scaled_cube_integral(f, lo, 1.5, t) == doctest::Approx(0.4 * 2.25).epsilon(1e-12));
  }
  CHECK(error_code([&] { scaled_cube_integral(f, lo, 1.5, 0.0); }) == "invalid_scale");
}

TEST_CASE("ergodic experiment shrinks the deviation with the window") {
  StationaryModel m;
  m.delta = 0.5;
  m.seed = 40;
  const auto table = ergodic_average_experiment(m, {2.0, 16.0}, 12, 0.5, 32.0);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1].mean_abs_dev < table.rows[0].mean_abs_dev);
  CHECK(table.deviations[0].size() == 12);
  CHECK(ergodic_csv(table).rfind("t,mean_abs_dev,std_dev,n_seeds\n", 0) == 0);
  CHECK(error_code([&] { ergodic_average_experiment(m, {4.0, 2.0}, 3, 0.5, 32.0); }) == "invalid_parameter");
}
