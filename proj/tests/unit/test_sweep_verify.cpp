#include <doctest.h>

#include <cmath>

#include "configdensity/sweep.hpp"
#include "configdensity/verify.hpp"
#include "helpers.hpp"

using namespace configdensity;
using nlohmann::json;
using testing::error_code;

namespace {

json base_config() {
  return json::parse(R"({
    "generator": {"kind": "union_balls",
                  "params": {"delta": 0.7, "radius": 1.0, "count": 12, "lo": [0, 0], "hi": [16, 16]},
                  "seed": 3},
    "grid": {"lo": [-1, -1], "hi": [17, 17], "spacing": 0.25},
    "functional": "pair",
    "t_min": 0.5, "t_max": 8, "t_steps": 5
  })");
}

std::string config_message(const json& j) {
  try {
    sweep_config_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == "config_error");
    return e.what();
  }
  return "";
}

SweepRow row(double t, bool positive, std::optional<double> alpha = std::nullopt) {
  SweepRow r;
  r.t = t;
  r.alpha = alpha;
  r.value = positive ? 1.0 : 0.0;
  r.positive = positive;
  return r;
}

}  // namespace

TEST_CASE("config errors name the offending field") {
  auto j = base_config();
  j["t_min"] = -1.0;
  CHECK(config_message(j).find("config_error: t_min") == 0);
  j = base_config();
  j.erase("grid");
  CHECK(config_message(j).find("config_error: grid") == 0);
  j = base_config();
  j["functional"] = "quadruple";
  CHECK(config_message(j).find("config_error: functional") == 0);
  j = base_config();
  j["functional"] = "d1";
  CHECK(config_message(j).find("config_error: alpha_list") == 0);
  j = base_config();
  j["method"] = "spectral";
  j["functional"] = "colinear";
  CHECK(config_message(j).find("config_error: method") == 0);
  j = base_config();
  j["generator"]["params"]["radius"] = -1.0;
  CHECK(config_message(j).find("config_error: generator") == 0);
  j = base_config();
  j["grid"]["spacing"] = "fine";
  CHECK(config_message(j).find("config_error: spacing") == 0);
}

TEST_CASE("geometric and linear scale schedules") {
  auto c = sweep_config_from_json(base_config());
  const auto g = c.t_values();
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.5);
  CHECK(g.back() == 8.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(2.0));
  c.geometric = false;
  const auto l = c.t_values();
  CHECK(l[1] - l[0] == doctest::Approx(1.875));
  auto j = base_config();
  j["t_max"] = 0.5;
  j["t_steps"] = 1;
  CHECK(sweep_config_from_json(j).t_values() == std::vector<double>{0.5});
}

TEST_CASE("onset detection") {
  CHECK(find_onset({row(1, true), row(2, true), row(3, true)}) == 1.0);
  CHECK_FALSE(find_onset({row(1, false), row(2, false)}).has_value());
  CHECK(find_onset({row(1, true), row(2, false), row(3, false), row(4, true), row(5, true)}) == 4.0);
  CHECK_FALSE(find_onset({row(1, true), row(2, false)}).has_value());
  // A scale is positive only if every alpha is.
  CHECK(find_onset({row(1, true, 0.1), row(1, false, 0.5), row(2, true, 0.1), row(2, true, 0.5)}) == 2.0);
  CHECK(error_code([] { find_onset({}); }) == "empty_sweep");
}

TEST_CASE("CSV round trip and layout") {
  std::vector<SweepRow> rows{row(0.1, true), row(2.0 / 3.0, false, 0.25)};
  rows[0].value = 1.0 / 3.0;
  rows[1].method = Method::spectral;
  rows[1].elapsed_ns = 1234;
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("t,alpha,value,method,positive,elapsed_ns\n", 0) == 0);
  const auto back = parse_sweep_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].value == rows[0].value);
  CHECK_FALSE(back[0].alpha.has_value());
  CHECK(back[1].t == rows[1].t);
  CHECK(back[1].alpha == 0.25);
  CHECK(back[1].method == Method::spectral);
  CHECK(back[1].elapsed_ns == 1234);
  CHECK(sweep_csv(back) == csv);
  CHECK(error_code([] { parse_sweep_csv("t,alpha\n1,2\n"); }) == "bad_csv");
}

TEST_CASE("identical configurations give byte-identical CSV") {
  auto j = base_config();
  j["functional"] = "d1";
  j["alpha_list"] = {1.0, 0.2};
  const auto c = sweep_config_from_json(j);
  const auto a = run_sweep(c);
  const auto b = run_sweep(c);
  CHECK(sweep_csv(a.rows) == sweep_csv(b.rows));
  REQUIRE(a.rows.size() == 10);
  CHECK(*a.rows[0].alpha == 0.2);  // rows ordered by (t, alpha)
  for (const auto& r : a.rows) CHECK(r.elapsed_ns == 0);
}

TEST_CASE("densifying a field never delays the onset") {
  auto j = base_config();
  j["epsilon_num"] = 0.5;
  j["t_min"] = 1.0;
  j["t_max"] = 12.0;
  j["t_steps"] = 8;
  const auto c = sweep_config_from_json(j);
  const auto sparse = generate(c.generator, c.grid);
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    GeneratorSpec more = c.generator;
    more.seed = seed;
    const auto extra = generate(more, c.grid);
    std::vector<double> v(c.grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(sparse[i], extra[i]);
    const DensityField dense(c.grid, std::move(v));
    const auto o_sparse = run_sweep(c, sparse).onset;
    const auto o_dense = run_sweep(c, dense).onset;
    if (o_sparse) {
      REQUIRE(o_dense.has_value());
      CHECK(*o_dense <= *o_sparse);
    }
  }
}

TEST_CASE("default positivity threshold") {
  const auto f = DensityField::constant(testing::square(0.0, 2.0, 0.5), 0.5);
  CHECK(default_epsilon(f) == doctest::Approx(1e-6 * 4.0 * 0.125));
  CHECK(default_epsilon(f, 1.0) == doctest::Approx(4e-6));
}

TEST_CASE("SVG plot has one polyline per alpha") {
  const std::string svg = sweep_svg({row(1, true, 0.1), row(2, true, 0.1), row(1, true, 0.5), row(2, true, 0.5)},
                                    "a < b");
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t count = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++count;
  CHECK(count == 2);
  CHECK(svg.find("a &lt; b") != std::string::npos);
}

TEST_CASE("fast verify suite passes and notices a broken J0") {
  const auto ok = verify_suite();
  CHECK(ok.reports.size() >= 12);
  CHECK(ok.exit_code == 0);
  for (const auto& r : ok.reports) CHECK_MESSAGE(r.passed, format_report(r));

  VerifyOptions broken;
  broken.j0 = j0_sign_flipped;
  const auto bad = verify_suite(broken);
  CHECK(bad.exit_code == 1);
  bool bessel_failed = false;
  for (const auto& r : bad.reports) bessel_failed = bessel_failed || (r.name == "bessel_j0_reference_values" && !r.passed);
  CHECK(bessel_failed);
}
