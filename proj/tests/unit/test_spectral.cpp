#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "configdensity/generators.hpp"
#include "configdensity/spectral.hpp"
#include "helpers.hpp"

using namespace configdensity;
using testing::error_code;
using testing::square;

constexpr double kPi = std::numbers::pi;

namespace {

DensityField gaussian(const Grid& g, double width) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      const double x = g.coordinate(0, i), y = g.coordinate(1, j);
      v[g.index(i, j)] = std::exp(-kPi * (x * x + y * y) / (width * width));
    }
  }
  return DensityField(g, std::move(v));
}

}  // namespace

TEST_CASE("transform of a centred Gaussian is the analytic Gaussian") {
  // g(x) = exp(-pi |x|^2 / w^2) has g^(xi) = w^2 exp(-pi w^2 |xi|^2), real.
  const double w = 0.8;
  const auto f = gaussian(square(-4.0, 4.0, 1.0 / 16.0), w);
  const Spectrum s = forward_transform(f);
  CHECK(s.grid.shape[0] == 256);  // 2x padding for zero_outside fields
  CHECK(s.freq_step[0] == doctest::Approx(1.0 / 16.0));
  for (std::size_t k0 : {0u, 1u, 5u, 20u, 255u}) {
    for (std::size_t k1 : {0u, 3u, 250u}) {
      const std::size_t flat = s.grid.index(k0, k1);
      const double rho = s.radius(flat);
      const double exact = w * w * std::exp(-kPi * w * w * rho * rho);
      REQUIRE(s.values[flat].real() == doctest::Approx(exact).epsilon(1e-10).scale(1.0));
      REQUIRE(std::abs(s.values[flat].imag()) < 1e-12);
    }
  }
  CHECK(s.frequency(0, 255) == doctest::Approx(-1.0 / 16.0));
}

TEST_CASE("Parseval and the DC coefficient on random fields") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = testing::uniform_noise(square(0.0, 4.0, 1.0 / 8.0), seed);
    const Spectrum s = forward_transform(f);
    CHECK(s.energy() == doctest::Approx(f.squared_norm()).epsilon(1e-11));
    CHECK(s.values[0].real() == doctest::Approx(f.mass()).epsilon(1e-12));
  }
}

TEST_CASE("unequal extents use per-axis frequency steps") {
  const std::vector<double> lo{0.0, 0.0}, hi{4.0, 2.0};
  const auto f = testing::uniform_noise(Grid::covering(lo, hi, 0.25), 6);
  const Spectrum s = forward_transform(f);
  CHECK(s.freq_step[0] == doctest::Approx(1.0 / 8.0));
  CHECK(s.freq_step[1] == doctest::Approx(1.0 / 4.0));
  CHECK(s.energy() == doctest::Approx(f.squared_norm()).epsilon(1e-11));
}

TEST_CASE("inverse transform and crop recover the field") {
  const Grid g = square(-1.0, 3.0, 0.125);
  const auto f = testing::uniform_noise(g, 11);
  const RealField back = crop(inverse_transform(forward_transform(f)), g);
  REQUIRE(back.values.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(back.values[i] == doctest::Approx(f[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("Poisson kernel has unit mass in one, two and three dimensions") {
  boost::math::quadrature::exp_sinh<double> q;
  const double lam = 0.7;
  const double m1 = 2.0 * q.integrate([&](double r) { return poisson_kernel(1, lam, r); });
  const double m2 = 2.0 * kPi * q.integrate([&](double r) { return r * poisson_kernel(2, lam, r); });
  CHECK(m1 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-10));
  const double m3 = 4.0 * kPi * q.integrate([&](double r) { return r * r * poisson_kernel(3, lam, r); });
  CHECK(m3 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Poisson semigroup and mass preservation") {
  const auto f = testing::uniform_noise(square(0.0, 4.0, 1.0 / 16.0), 7, Boundary::periodic);
  const RealField ab = inverse_transform(poisson_multiplier(forward_transform(f), 0.3));
  const RealField a = inverse_transform(poisson_multiplier(forward_transform(f), 0.1));
  const RealField b = inverse_transform(poisson_multiplier(forward_transform(a, 1), 0.2));
  for (std::size_t i = 0; i < ab.values.size(); ++i) REQUIRE(ab.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12).scale(1.0));
  CHECK(ab.sum_times_volume() == doctest::Approx(f.mass()).epsilon(1e-12));

  const auto smoothed = poisson_smooth_report(f, 0.25);
  CHECK(smoothed.raw_total_mass == doctest::Approx(f.mass()).epsilon(1e-12));
  for (double v : smoothed.field.values()) REQUIRE((v >= 0.0 && v <= 1.0));
}

TEST_CASE("Poisson smoothing at lambda 0 is the identity") {
  const auto f = testing::uniform_noise(square(0.0, 2.0, 0.25), 12);
  const auto g = poisson_smooth(f, 0.0);
  for (std::size_t i = 0; i < f.grid().size(); ++i) REQUIRE(g[i] == f[i]);
  CHECK(error_code([&] { poisson_smooth(f, -1.0); }) == "invalid_lambda");
}

TEST_CASE("circle multiplier needs a planar field") {
  const std::vector<double> lo{0.0}, hi{4.0};
  const auto f = testing::uniform_noise(Grid::covering(lo, hi, 0.25), 1);
  CHECK(error_code([&] { circle_multiplier(forward_transform(f), 1.0); }) == "circle_measure_requires_2d");
}
