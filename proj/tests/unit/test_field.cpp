#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "configdensity/field.hpp"
#include "helpers.hpp"

using namespace configdensity;
using testing::error_code;
using testing::square;

TEST_CASE("grid covering places cell centres half a step inside the box") {
  const Grid g = square(-1.0, 1.0, 0.25);
  CHECK(g.dim == 2);
  CHECK(g.shape[0] == 8);
  CHECK(g.shape[1] == 8);
  CHECK(g.shape[2] == 1);
  CHECK(g.coordinate(0, 0) == doctest::Approx(-0.875));
  CHECK(g.lower_edge(1) == doctest::Approx(-1.0));
  CHECK(g.upper_edge(1) == doctest::Approx(1.0));
  CHECK(g.cell_volume() == doctest::Approx(0.0625));
}

TEST_CASE("grid validation") {
  CHECK(error_code([] { square(0.0, 1.0, 0.3); }) == "invalid_grid");
  CHECK(error_code([] { square(0.0, 1.0, -0.5); }) == "invalid_grid");
  Grid g;
  g.dim = 4;
  CHECK(error_code([&] { g.validate(); }) == "invalid_grid");
}

TEST_CASE("field values must lie in the unit interval") {
  const Grid g = square(0.0, 1.0, 0.5);
  CHECK(error_code([&] { DensityField(g, {0.0, 0.5, 1.5, 0.2}); }) == "invariant_violation");
  CHECK(error_code([&] { DensityField(g, {0.0, 0.5}); }) == "invariant_violation");
  CHECK(error_code([&] { DensityField(g, {0.0, -1e-3, 0.0, 0.0}); }) == "invariant_violation");
}

TEST_CASE("mass, norm and support of a constant field") {
  const Grid g = square(0.0, 4.0, 0.5);
  const auto f = DensityField::constant(g, 0.25);
  CHECK(f.mass() == doctest::Approx(4.0));
  CHECK(f.squared_norm() == doctest::Approx(1.0));
  CHECK(f.support_measure() == doctest::Approx(16.0));
  CHECK(f.max_value() == 0.25);
}

TEST_CASE(".dfield round trip is bit exact") {
  const Grid g = square(-2.0, 2.0, 0.125);
  const auto f = testing::uniform_noise(g, 9, Boundary::periodic);
  const auto bytes = encode_field(f);
  CHECK(bytes.size() == 72 + 8 * g.size());
  const auto back = decode_field(bytes);
  CHECK(back.grid() == g);
  CHECK(back.boundary() == Boundary::periodic);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(back[i] == f[i]);

  const auto path = std::filesystem::temp_directory_path() / "configdensity_roundtrip.dfield";
  save_field(f, path);
  const auto loaded = load_field(path);
  std::filesystem::remove(path);
  CHECK(encode_field(loaded) == bytes);

  auto broken = bytes;
  broken[0] = 'X';
  CHECK(error_code([&] { decode_field(broken); }) == "bad_field_file");
  broken = bytes;
  broken.resize(bytes.size() - 3);
  CHECK(error_code([&] { decode_field(broken); }) == "bad_field_file");
  CHECK(error_code([] { load_field("/nonexistent/field.dfield"); }) == "io_error");
}

TEST_CASE("lattice translation is an exact index shift") {
  const Grid g = square(0.0, 8.0, 0.5);
  const auto f = testing::uniform_noise(g, 4);
  const std::vector<double> v{1.0, -0.5};
  const auto tf = translate(f, v);
  // (T_v f)(x) = f(x + v): index shift (+2, -1).
  for (std::size_t i = 0; i + 2 < g.shape[0]; ++i) {
    for (std::size_t j = 1; j < g.shape[1]; ++j) {
      REQUIRE(tf.at(i, j) == f.at(i + 2, j - 1));
    }
  }
  CHECK(tf.at(g.shape[0] - 1, 3) == 0.0);
}

TEST_CASE("rescaling by one is the identity and rejects bad scales") {
  const Grid g = square(-2.0, 2.0, 0.25);
  const auto f = testing::uniform_noise(g, 5);
  const auto z = rescale(f, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(z[i] == doctest::Approx(f[i]).epsilon(1e-12));
  CHECK(error_code([&] { rescale(f, 0.0); }) == "invalid_scale");
  CHECK(error_code([&] { rescale(f, -2.0); }) == "invalid_scale");
}

namespace {

// Cell-by-cell overlap, the direct definition of the window integral of a
// piecewise-constant field.
double brute_integral(const DensityField& f, const std::array<double, 2>& lo,
                      const std::array<double, 2>& hi) {
  const Grid& g = f.grid();
  const double h = g.spacing;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    const double a0 = g.coordinate(0, i) - h / 2, a1 = a0 + h;
    const double ox = std::max(0.0, std::min(hi[0], a1) - std::max(lo[0], a0));
    if (ox == 0.0) continue;
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      const double b0 = g.coordinate(1, j) - h / 2, b1 = b0 + h;
      const double oy = std::max(0.0, std::min(hi[1], b1) - std::max(lo[1], b0));
      acc += ox * oy * f.at(i, j);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("window integrator matches cell overlap on random boxes") {
  const Grid g = square(-3.0, 3.0, 0.25);
  const auto f = testing::uniform_noise(g, 17);
  const WindowIntegrator w(f);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 200; ++k) {
    std::array<double, 2> lo{u(rng), u(rng)}, hi{u(rng), u(rng)};
    for (int a = 0; a < 2; ++a) {
      if (lo[a] > hi[a]) std::swap(lo[a], hi[a]);
    }
    REQUIRE(w.integral(lo, hi) == doctest::Approx(brute_integral(f, lo, hi)).epsilon(1e-11));
  }
}

TEST_CASE("periodic window of one full period integrates the mass anywhere") {
  const Grid g = square(0.0, 4.0, 0.25);
  const auto f = testing::uniform_noise(g, 2, Boundary::periodic);
  const WindowIntegrator w(f);
  for (double shift : {0.0, 0.37, -5.1, 11.9}) {
    const std::array<double, 2> lo{shift, 0.5 * shift}, hi{shift + 4.0, 0.5 * shift + 4.0};
    CHECK(w.integral(lo, hi) == doctest::Approx(f.mass()).epsilon(1e-11));
  }
}

TEST_CASE("window average of a constant field is the constant exactly") {
  const auto f = DensityField::constant(square(0.0, 32.0, 0.25), 0.37);
  const WindowIntegrator w(f);
  for (double c : {3.0, 7.3, 16.0}) {
    const std::array<double, 2> centre{c, 32.0 - c};
    CHECK(w.average(centre, 4.0) == 0.37);
  }
}

TEST_CASE("sample interpolates and respects the boundary mode") {
  const Grid g = square(0.0, 2.0, 1.0);  // centres 0.5, 1.5
  const DensityField f(g, {0.0, 1.0, 0.5, 0.25});
  const std::array<double, 2> mid{1.0, 1.0};
  CHECK(f.sample(mid) == doctest::Approx((0.0 + 1.0 + 0.5 + 0.25) / 4.0));
  const std::array<double, 2> far{10.0, 10.0};
  CHECK(f.sample(far) == 0.0);
  const auto p = f.with_boundary(Boundary::periodic);
  const std::array<double, 2> wrapped{2.5, 0.5};
  CHECK(p.sample(wrapped) == doctest::Approx(f.at(0, 0)));
}
