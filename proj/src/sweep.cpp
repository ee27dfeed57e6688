#include "configdensity/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "configdensity/error.hpp"
#include "configdensity/parallel.hpp"

namespace configdensity {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
  throw Error("config_error", field + ": " + why);
}

double get_number(const nlohmann::json& j, const char* key, double fallback, bool required) {
  if (!j.contains(key)) {
    if (required) config_error(key, "is required");
    return fallback;
  }
  if (!j[key].is_number()) config_error(key, "must be a number");
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) config_error(key, "must be finite");
  return v;
}

std::size_t get_count(const nlohmann::json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 0) config_error(key, "must be a non-negative integer");
  return j[key].get<std::size_t>();
}

bool get_bool(const nlohmann::json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) config_error(key, "must be true or false");
  return j[key].get<bool>();
}

std::vector<double> get_numbers(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array()) config_error(key, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) config_error(key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Grid parse_grid(const nlohmann::json& j) {
  if (!j.is_object()) config_error("grid", "must be an object");
  const double h = get_number(j, "spacing", 0.0, false);
  if (!j.contains("spacing")) config_error("grid.spacing", "is required");
  try {
    if (j.contains("lo") || j.contains("hi")) {
      if (!j.contains("lo") || !j.contains("hi")) config_error("grid", "needs both lo and hi");
      return Grid::covering(get_numbers(j["lo"], "grid.lo"), get_numbers(j["hi"], "grid.hi"), h);
    }
    if (!j.contains("shape")) config_error("grid", "needs either shape or lo/hi");
    std::vector<std::size_t> shape;
    if (!j["shape"].is_array()) config_error("grid.shape", "must be an array of integers");
    for (const auto& e : j["shape"]) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) config_error("grid.shape", "must be an array of integers");
      shape.push_back(e.get<std::size_t>());
    }
    std::vector<double> origin;
    if (j.contains("origin")) origin = get_numbers(j["origin"], "grid.origin");
    return Grid::make(shape, h, origin);
  } catch (const Error& e) {
    if (e.code() == "config_error") throw;
    config_error("grid", e.what());
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::pair: return "pair";
    case FunctionalKind::d1: return "d1";
    case FunctionalKind::colinear: return "colinear";
  }
  return "unknown";
}

std::vector<double> SweepConfig::t_values() const {
  if (t_steps <= 1) return {t_min};
  std::vector<double> out(t_steps);
  for (std::size_t i = 0; i < t_steps; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(t_steps - 1);
    out[i] = geometric ? t_min * std::pow(t_max / t_min, u) : t_min + (t_max - t_min) * u;
  }
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

FieldConfig field_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) config_error("config", "must be a JSON object");
  FieldConfig c;

  if (!j.contains("generator")) config_error("generator", "is required");
  try {
    c.generator = generator_from_json(j["generator"]);
  } catch (const Error& e) {
    config_error("generator", e.what());
  }
  if (!j.contains("grid")) config_error("grid", "is required");
  c.grid = parse_grid(j["grid"]);
  try {
    c.generator.validate(c.grid.dim);
  } catch (const Error& e) {
    config_error("generator", e.what());
  }

  if (j.contains("boundary")) {
    if (!j["boundary"].is_string()) config_error("boundary", "must be a string");
    try {
      c.boundary = boundary_from_string(j["boundary"].get<std::string>());
    } catch (const Error& e) {
      config_error("boundary", e.what());
    }
  }
  c.allow_clip = get_bool(j, "allow_clip", false);
  return c;
}

DensityField generate(const FieldConfig& config) {
  return generate(config.generator, config.grid, config.boundary, config.allow_clip);
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  const FieldConfig fc = field_config_from_json(j);
  c.generator = fc.generator;
  c.grid = fc.grid;
  c.boundary = fc.boundary;
  c.allow_clip = fc.allow_clip;

  if (!j.contains("functional") || !j["functional"].is_string()) {
    config_error("functional", "must be one of pair, d1, colinear");
  }
  const auto fn = j["functional"].get<std::string>();
  if (fn == "pair") {
    c.functional = FunctionalKind::pair;
  } else if (fn == "d1") {
    c.functional = FunctionalKind::d1;
  } else if (fn == "colinear") {
    c.functional = FunctionalKind::colinear;
  } else {
    config_error("functional", "must be one of pair, d1, colinear");
  }
  if (j.contains("method")) {
    if (!j["method"].is_string()) config_error("method", "must be spatial or spectral");
    const auto m = j["method"].get<std::string>();
    if (m == "spatial") {
      c.method = Method::spatial;
    } else if (m == "spectral") {
      c.method = Method::spectral;
    } else {
      config_error("method", "must be spatial or spectral");
    }
    if (c.method == Method::spectral && c.functional != FunctionalKind::pair) {
      config_error("method", "spectral evaluation exists only for the pair functional");
    }
  }

  c.t_min = get_number(j, "t_min", 0.0, true);
  c.t_max = get_number(j, "t_max", 0.0, true);
  c.t_steps = get_count(j, "t_steps", 0);
  if (!(c.t_min > 0.0)) config_error("t_min", "must be positive");
  if (!(c.t_max >= c.t_min)) config_error("t_max", "must be at least t_min");
  if (c.t_steps < 1) config_error("t_steps", "must be at least 1");
  if (c.t_steps == 1 && c.t_max != c.t_min) config_error("t_steps", "must be at least 2 when t_max > t_min");
  if (j.contains("t_spacing")) {
    const auto& s = j["t_spacing"];
    if (s == "geometric") {
      c.geometric = true;
    } else if (s == "linear") {
      c.geometric = false;
    } else {
      config_error("t_spacing", "must be geometric or linear");
    }
  }

  c.M = get_number(j, "M", 1.0, false);
  if (!(c.M > 0.0)) config_error("M", "must be positive");
  if (j.contains("alpha_list")) c.alpha_list = get_numbers(j["alpha_list"], "alpha_list");
  if (c.functional == FunctionalKind::d1) {
    if (c.alpha_list.empty()) config_error("alpha_list", "is required for the d1 functional");
    for (double a : c.alpha_list) {
      if (!(a > 0.0 && a <= c.M)) config_error("alpha_list", "entries must lie in (0, M]");
    }
  }

  c.quadrature.circle_nodes = get_count(j, "circle_nodes", 0);
  c.quadrature.ray_nodes = get_count(j, "ray_nodes", 64);
  if (c.quadrature.circle_nodes != 0 && c.quadrature.circle_nodes < 4) {
    config_error("circle_nodes", "must be 0 (automatic) or at least 4");
  }
  if (c.quadrature.ray_nodes < 2) config_error("ray_nodes", "must be at least 2");
  c.n_dirs = get_count(j, "n_dirs", 0);
  if (j.contains("epsilon_num")) {
    c.epsilon_num = get_number(j, "epsilon_num", 0.0, true);
    if (*c.epsilon_num < 0.0) config_error("epsilon_num", "must be non-negative");
  }
  if (j.contains("delta_nominal")) {
    c.delta_nominal = get_number(j, "delta_nominal", 0.0, true);
    if (!(*c.delta_nominal > 0.0 && *c.delta_nominal <= 1.0)) {
      config_error("delta_nominal", "must lie in (0, 1]");
    }
  }
  c.record_timing = get_bool(j, "record_timing", false);
  if (j.contains("output")) {
    if (!j["output"].is_string()) config_error("output", "must be a string path");
    c.output = j["output"].get<std::string>();
  }
  return c;
}

double default_epsilon(const DensityField& f, std::optional<double> delta_nominal) {
  const double delta = delta_nominal.value_or(f.max_value());
  return 1e-6 * f.support_measure() * delta * delta * delta;
}

SweepResult run_sweep(const SweepConfig& config, const DensityField& f) {
  const auto ts = config.t_values();
  struct Point {
    double t;
    std::optional<double> alpha;
  };
  std::vector<Point> points;
  for (double t : ts) {
    if (config.functional == FunctionalKind::d1) {
      std::vector<double> alphas = config.alpha_list;
      std::sort(alphas.begin(), alphas.end());
      for (double a : alphas) points.push_back({t, a});
    } else {
      points.push_back({t, std::nullopt});
    }
  }

  SweepResult result;
  result.epsilon_num = config.epsilon_num.value_or(default_epsilon(f, config.delta_nominal));
  result.rows.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point& p = points[i];
    FunctionalResult fr;
    switch (config.functional) {
      case FunctionalKind::pair:
        fr = pair_correlation(f, p.t, config.method, config.quadrature);
        break;
      case FunctionalKind::d1:
        fr = triangle_d1(f, *p.alpha, p.t, config.quadrature);
        break;
      case FunctionalKind::colinear:
        fr = colinear_triple(f, p.t, config.n_dirs);
        break;
    }
    SweepRow& row = result.rows[i];
    row.t = p.t;
    row.alpha = p.alpha;
    row.value = fr.value;
    row.method = fr.method;
    row.positive = fr.value > result.epsilon_num;
    row.elapsed_ns = config.record_timing ? fr.elapsed_ns : 0;
  });
  result.onset = find_onset(result.rows);
  return result;
}

SweepResult run_sweep(const SweepConfig& config) {
  const DensityField f = generate(config.generator, config.grid, config.boundary, config.allow_clip);
  return run_sweep(config, f);
}

std::optional<double> find_onset(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw Error("empty_sweep", "no rows to search");
  // A scale counts as positive only when every alpha at that scale is.
  std::map<double, bool> by_t;
  for (const auto& r : rows) {
    auto [it, inserted] = by_t.emplace(r.t, r.positive);
    if (!inserted) it->second = it->second && r.positive;
  }
  std::optional<double> onset;
  for (auto it = by_t.rbegin(); it != by_t.rend(); ++it) {
    if (!it->second) break;
    onset = it->first;
  }
  return onset;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "t,alpha,value,method,positive,elapsed_ns\n";
  for (const auto& r : rows) {
    out += format_number(r.t);
    out += ',';
    if (r.alpha) out += format_number(*r.alpha);
    out += ',';
    out += format_number(r.value);
    out += ',';
    out += to_string(r.method);
    out += ',';
    out += r.positive ? "true" : "false";
    out += ',';
    out += std::to_string(r.elapsed_ns);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,alpha,value", 0) != 0) {
    throw Error("bad_csv", "missing sweep CSV header");
  }
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 6) throw Error("bad_csv", "line " + std::to_string(lineno) + ": expected 6 columns");
    try {
      SweepRow r;
      r.t = std::stod(cells[0]);
      if (!cells[1].empty()) r.alpha = std::stod(cells[1]);
      r.value = std::stod(cells[2]);
      r.method = method_from_string(cells[3]);
      r.positive = cells[4] == "true";
      r.elapsed_ns = std::stoll(cells[5]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw Error("bad_csv", "line " + std::to_string(lineno) + ": unparsable number");
    }
  }
  return rows;
}

}  // namespace configdensity
