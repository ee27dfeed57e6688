#include "configdensity/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "configdensity/error.hpp"

namespace configdensity {

namespace {

constexpr double kEdgeTol = 1e-9;

struct KindName {
  GeneratorKind kind;
  const char* name;
};
constexpr KindName kKinds[] = {
    {GeneratorKind::constant_on_box, "constant_on_box"},
    {GeneratorKind::ball, "ball"},
    {GeneratorKind::union_balls, "union_balls"},
    {GeneratorKind::periodic_squares, "periodic_squares"},
    {GeneratorKind::bernoulli_cells, "bernoulli_cells"},
    {GeneratorKind::custom_file, "custom_file"},
};

[[noreturn]] void bad(const std::string& param, const std::string& why) {
  throw Error("invalid_generator", "params." + param + ": " + why);
}

void require_vec(const std::vector<double>& v, int dim, const char* name, bool optional) {
  if (v.empty() && optional) return;
  if (static_cast<int>(v.size()) != dim) bad(name, "must have one entry per axis");
  for (double c : v) {
    if (!std::isfinite(c)) bad(name, "must be finite");
  }
}

void check_box_inside(const Grid& g, std::span<const double> lo, std::span<const double> hi,
                      bool allow_clip) {
  if (allow_clip) return;
  for (int a = 0; a < g.dim; ++a) {
    const double tol = kEdgeTol * std::max(1.0, g.extent(a));
    if (lo[a] < g.lower_edge(a) - tol || hi[a] > g.upper_edge(a) + tol) {
      throw Error("support_clipped",
                  "requested support leaves the grid on axis " + std::to_string(a));
    }
  }
}

template <class Fn>
std::vector<double> fill(const Grid& g, Fn&& value_at) {
  std::vector<double> out(g.size());
  std::array<double, 3> p{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < g.shape[0]; ++i) {
    for (std::size_t j = 0; j < g.shape[1]; ++j) {
      for (std::size_t k = 0; k < g.shape[2]; ++k) {
        const std::array<std::size_t, 3> idx{i, j, k};
        for (int a = 0; a < g.dim; ++a) p[a] = g.coordinate(a, idx[a]);
        out[g.index(i, j, k)] = value_at(p);
      }
    }
  }
  return out;
}

bool in_box(const std::array<double, 3>& p, std::span<const double> lo,
            std::span<const double> hi, int dim) {
  for (int a = 0; a < dim; ++a) {
    if (p[a] < lo[a] || p[a] > hi[a]) return false;
  }
  return true;
}

// Region lo/hi defaulting to the whole grid.
void region(const GeneratorSpec& s, const Grid& g, std::vector<double>& lo,
            std::vector<double>& hi) {
  lo = s.lo;
  hi = s.hi;
  if (lo.empty()) {
    for (int a = 0; a < g.dim; ++a) lo.push_back(g.lower_edge(a));
  }
  if (hi.empty()) {
    for (int a = 0; a < g.dim; ++a) hi.push_back(g.upper_edge(a));
  }
}

}  // namespace

std::string to_string(GeneratorKind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (const auto& e : kKinds) {
    if (name == e.name) return e.kind;
  }
  throw Error("invalid_generator", "unknown generator kind '" + name + "'");
}

void GeneratorSpec::validate(int dim) const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  switch (kind) {
    case GeneratorKind::constant_on_box:
      if (!unit(delta)) bad("delta", "must lie in [0,1]");
      require_vec(lo, dim, "lo", false);
      require_vec(hi, dim, "hi", false);
      for (int a = 0; a < dim; ++a) {
        if (!(hi[a] > lo[a])) bad("hi", "must exceed lo on every axis");
      }
      break;
    case GeneratorKind::ball:
      if (!unit(delta)) bad("delta", "must lie in [0,1]");
      if (!(radius > 0.0) || !std::isfinite(radius)) bad("radius", "must be positive");
      require_vec(center, dim, "center", true);
      break;
    case GeneratorKind::union_balls:
      if (!unit(delta)) bad("delta", "must lie in [0,1]");
      if (!(radius > 0.0) || !std::isfinite(radius)) bad("radius", "must be positive");
      require_vec(lo, dim, "lo", false);
      require_vec(hi, dim, "hi", false);
      for (int a = 0; a < dim; ++a) {
        if (!(hi[a] - lo[a] >= 2.0 * radius)) bad("hi", "box must hold a whole ball");
      }
      break;
    case GeneratorKind::periodic_squares:
      if (!unit(delta)) bad("delta", "must lie in [0,1]");
      if (!(period > 0.0) || !std::isfinite(period)) bad("period", "must be positive");
      if (side < 0.0 || side > period) bad("side", "must lie in [0, period]");
      require_vec(lo, dim, "lo", true);
      require_vec(hi, dim, "hi", true);
      break;
    case GeneratorKind::bernoulli_cells:
      if (!unit(delta)) bad("delta", "fill probability must lie in [0,1]");
      if (!unit(level)) bad("level", "must lie in [0,1]");
      if (!(cell > 0.0) || !std::isfinite(cell)) bad("cell", "must be positive");
      require_vec(lo, dim, "lo", true);
      require_vec(hi, dim, "hi", true);
      break;
    case GeneratorKind::custom_file:
      if (path.empty()) bad("path", "is required");
      break;
  }
}

nlohmann::json to_json(const GeneratorSpec& s) {
  nlohmann::json p = nlohmann::json::object();
  switch (s.kind) {
    case GeneratorKind::constant_on_box:
      p = {{"delta", s.delta}, {"lo", s.lo}, {"hi", s.hi}};
      break;
    case GeneratorKind::ball:
      p = {{"delta", s.delta}, {"radius", s.radius}};
      if (!s.center.empty()) p["center"] = s.center;
      break;
    case GeneratorKind::union_balls:
      p = {{"delta", s.delta}, {"radius", s.radius}, {"count", s.count},
           {"lo", s.lo}, {"hi", s.hi}};
      break;
    case GeneratorKind::periodic_squares:
      p = {{"delta", s.delta}, {"period", s.period}, {"side", s.side}};
      if (!s.lo.empty()) p["lo"] = s.lo;
      if (!s.hi.empty()) p["hi"] = s.hi;
      break;
    case GeneratorKind::bernoulli_cells:
      p = {{"delta", s.delta}, {"level", s.level}, {"cell", s.cell}};
      if (!s.lo.empty()) p["lo"] = s.lo;
      if (!s.hi.empty()) p["hi"] = s.hi;
      break;
    case GeneratorKind::custom_file:
      p = {{"path", s.path}};
      break;
  }
  return {{"kind", to_string(s.kind)}, {"params", p}, {"seed", s.seed}};
}

GeneratorSpec generator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("invalid_generator", "generator must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw Error("invalid_generator", "kind: missing or not a string");
  }
  GeneratorSpec s;
  s.kind = generator_kind_from_string(j["kind"].get<std::string>());
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0)) {
      throw Error("invalid_generator", "seed: must be a non-negative integer");
    }
    s.seed = j["seed"].get<std::uint64_t>();
  }
  const nlohmann::json p = j.value("params", nlohmann::json::object());
  if (!p.is_object()) throw Error("invalid_generator", "params: must be an object");
  auto num = [&](const char* key, double& out) {
    if (!p.contains(key)) return;
    if (!p[key].is_number()) bad(key, "must be a number");
    out = p[key].get<double>();
  };
  auto vec = [&](const char* key, std::vector<double>& out) {
    if (!p.contains(key)) return;
    if (!p[key].is_array()) bad(key, "must be an array of numbers");
    out.clear();
    for (const auto& e : p[key]) {
      if (!e.is_number()) bad(key, "must be an array of numbers");
      out.push_back(e.get<double>());
    }
  };
  num("delta", s.delta);
  num("level", s.level);
  num("radius", s.radius);
  num("period", s.period);
  num("side", s.side);
  num("cell", s.cell);
  if (p.contains("count")) {
    if (!p["count"].is_number_integer() || p["count"].get<std::int64_t>() < 0) bad("count", "must be a non-negative integer");
    s.count = p["count"].get<std::size_t>();
  }
  vec("center", s.center);
  vec("lo", s.lo);
  vec("hi", s.hi);
  if (p.contains("path")) {
    if (!p["path"].is_string()) bad("path", "must be a string");
    s.path = p["path"].get<std::string>();
  }
  return s;
}

DensityField generate(const GeneratorSpec& spec, const Grid& grid, Boundary boundary,
                      bool allow_clip) {
  grid.validate();
  const int d = grid.dim;
  spec.validate(d);

  switch (spec.kind) {
    case GeneratorKind::constant_on_box: {
      check_box_inside(grid, spec.lo, spec.hi, allow_clip);
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        return in_box(p, spec.lo, spec.hi, d) ? spec.delta : 0.0;
      });
      return DensityField(grid, std::move(vals), boundary);
    }
    case GeneratorKind::ball: {
      std::vector<double> c = spec.center.empty() ? std::vector<double>(d, 0.0) : spec.center;
      std::vector<double> lo(d), hi(d);
      for (int a = 0; a < d; ++a) {
        lo[a] = c[a] - spec.radius;
        hi[a] = c[a] + spec.radius;
      }
      check_box_inside(grid, lo, hi, allow_clip);
      const double r2 = spec.radius * spec.radius;
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) s += (p[a] - c[a]) * (p[a] - c[a]);
        return s <= r2 ? spec.delta : 0.0;
      });
      return DensityField(grid, std::move(vals), boundary);
    }
    case GeneratorKind::union_balls: {
      check_box_inside(grid, spec.lo, spec.hi, allow_clip);
      std::mt19937_64 rng(spec.seed);
      std::vector<std::array<double, 3>> centers(spec.count);
      for (auto& c : centers) {
        for (int a = 0; a < d; ++a) {
          std::uniform_real_distribution<double> u(spec.lo[a] + spec.radius,
                                                   spec.hi[a] - spec.radius);
          c[a] = u(rng);
        }
      }
      const double r2 = spec.radius * spec.radius;
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        for (const auto& c : centers) {
          double s = 0.0;
          for (int a = 0; a < d; ++a) s += (p[a] - c[a]) * (p[a] - c[a]);
          if (s <= r2) return spec.delta;
        }
        return 0.0;
      });
      return DensityField(grid, std::move(vals), boundary);
    }
    case GeneratorKind::periodic_squares: {
      std::vector<double> lo, hi;
      region(spec, grid, lo, hi);
      check_box_inside(grid, lo, hi, allow_clip);
      const double side = spec.side > 0.0 ? spec.side : 0.5 * spec.period;
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        if (!in_box(p, lo, hi, d)) return 0.0;
        for (int a = 0; a < d; ++a) {
          const double r = std::fmod(p[a] - lo[a], spec.period);
          if (!(r < side)) return 0.0;
        }
        return spec.delta;
      });
      return DensityField(grid, std::move(vals), boundary);
    }
    case GeneratorKind::bernoulli_cells: {
      std::vector<double> lo, hi;
      region(spec, grid, lo, hi);
      check_box_inside(grid, lo, hi, allow_clip);
      std::array<std::size_t, 3> cells{1, 1, 1};
      for (int a = 0; a < d; ++a) {
        cells[a] = static_cast<std::size_t>(std::ceil((hi[a] - lo[a]) / spec.cell - 1e-9));
        if (cells[a] == 0) cells[a] = 1;
      }
      // Cells are drawn in row-major order from a single seeded stream.
      std::mt19937_64 rng(spec.seed);
      std::bernoulli_distribution coin(spec.delta);
      std::vector<char> filled(cells[0] * cells[1] * cells[2]);
      for (auto& c : filled) c = coin(rng) ? 1 : 0;
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        if (!in_box(p, lo, hi, d)) return 0.0;
        std::array<std::size_t, 3> ci{0, 0, 0};
        for (int a = 0; a < d; ++a) {
          const auto c = static_cast<std::size_t>(std::floor((p[a] - lo[a]) / spec.cell));
          ci[a] = std::min(c, cells[a] - 1);
        }
        return filled[(ci[0] * cells[1] + ci[1]) * cells[2] + ci[2]] ? spec.level : 0.0;
      });
      return DensityField(grid, std::move(vals), boundary);
    }
    case GeneratorKind::custom_file: {
      const DensityField src = load_field(spec.path);
      if (src.dim() != d) throw Error("invalid_generator", "params.path: dimension mismatch");
      if (src.grid() == grid) return DensityField(src.grid(), {src.values().begin(), src.values().end()}, boundary);
      std::vector<double> lo(d), hi(d);
      for (int a = 0; a < d; ++a) {
        lo[a] = src.grid().lower_edge(a);
        hi[a] = src.grid().upper_edge(a);
      }
      check_box_inside(grid, lo, hi, allow_clip);
      auto vals = fill(grid, [&](const std::array<double, 3>& p) {
        return src.sample(std::span<const double>(p.data(), d));
      });
      return DensityField(grid, std::move(vals), boundary);
    }
  }
  throw Error("invalid_generator", "unhandled kind");
}

}  // namespace configdensity
