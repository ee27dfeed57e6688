#include "configdensity/stationary.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "configdensity/error.hpp"
#include "configdensity/parallel.hpp"

namespace configdensity {

double StationaryModel::mean(int dim) const {
  if (kind == Kind::bernoulli_tiling) return delta * level;
  double ball = 0.0;
  switch (dim) {
    case 1: ball = 2.0 * radius; break;
    case 2: ball = std::numbers::pi * radius * radius; break;
    default: ball = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius; break;
  }
  return level * (1.0 - std::exp(-intensity * ball));
}

DensityField sample_stationary(const StationaryModel& model, const Grid& grid) {
  grid.validate();
  const int d = grid.dim;
  if (!(model.level >= 0.0 && model.level <= 1.0)) {
    throw Error("invalid_parameter", "level must lie in [0,1]");
  }
  std::mt19937_64 rng(model.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> vals(grid.size(), 0.0);

  if (model.kind == StationaryModel::Kind::bernoulli_tiling) {
    if (!(model.cell > 0.0) || !(model.delta >= 0.0 && model.delta <= 1.0)) {
      throw Error("invalid_parameter", "cell must be positive and delta in [0,1]");
    }
    std::array<std::size_t, 3> cells{1, 1, 1};
    for (int a = 0; a < d; ++a) {
      const double ratio = grid.extent(a) / model.cell;
      const double r = std::round(ratio);
      if (r < 1.0 || std::abs(ratio - r) > 1e-9 * std::max(1.0, ratio)) {
        throw Error("extent_not_multiple", "grid extent must be a whole number of tiles");
      }
      cells[a] = static_cast<std::size_t>(r);
    }
    std::array<double, 3> phase{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) phase[a] = model.cell * unit(rng);
    std::bernoulli_distribution coin(model.delta);
    std::vector<char> filled(cells[0] * cells[1] * cells[2]);
    for (auto& c : filled) c = coin(rng) ? 1 : 0;

    for (std::size_t i = 0; i < grid.shape[0]; ++i) {
      for (std::size_t j = 0; j < grid.shape[1]; ++j) {
        for (std::size_t k = 0; k < grid.shape[2]; ++k) {
          const std::array<std::size_t, 3> idx{i, j, k};
          std::array<std::size_t, 3> ci{0, 0, 0};
          for (int a = 0; a < d; ++a) {
            const double u = (grid.coordinate(a, idx[a]) - grid.lower_edge(a) - phase[a]) / model.cell;
            auto c = static_cast<long>(std::floor(u));
            const auto n = static_cast<long>(cells[a]);
            c %= n;
            if (c < 0) c += n;
            ci[a] = static_cast<std::size_t>(c);
          }
          if (filled[(ci[0] * cells[1] + ci[1]) * cells[2] + ci[2]]) {
            vals[grid.index(i, j, k)] = model.level;
          }
        }
      }
    }
    return DensityField(grid, std::move(vals), Boundary::periodic);
  }

  if (!(model.intensity >= 0.0) || !(model.radius > 0.0)) {
    throw Error("invalid_parameter", "intensity must be >= 0 and radius > 0");
  }
  double volume = 1.0;
  for (int a = 0; a < d; ++a) volume *= grid.extent(a);
  std::poisson_distribution<std::uint64_t> count_dist(model.intensity * volume);
  const std::uint64_t count = count_dist(rng);
  std::vector<std::array<double, 3>> centres(count);
  for (auto& c : centres) {
    for (int a = 0; a < d; ++a) c[a] = grid.lower_edge(a) + grid.extent(a) * unit(rng);
  }
  const double r2 = model.radius * model.radius;
  const auto reach = static_cast<long>(std::ceil(model.radius / grid.spacing));
  for (const auto& c : centres) {
    // Visit only the cells within the ball's bounding box, wrapping indices.
    std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < d; ++a) {
      const auto centre_idx = static_cast<long>(std::floor((c[a] - grid.origin[a]) / grid.spacing));
      lo[a] = centre_idx - reach;
      hi[a] = centre_idx + reach + 1;
    }
    for (long i = lo[0]; i <= hi[0]; ++i) {
      for (long j = lo[1]; j <= hi[1]; ++j) {
        for (long k = lo[2]; k <= hi[2]; ++k) {
          const std::array<long, 3> idx{i, j, k};
          double dist2 = 0.0;
          std::array<std::size_t, 3> w{0, 0, 0};
          for (int a = 0; a < d; ++a) {
            const double x = grid.origin[a] + static_cast<double>(idx[a]) * grid.spacing;
            dist2 += (x - c[a]) * (x - c[a]);
            const auto n = static_cast<long>(grid.shape[a]);
            w[a] = static_cast<std::size_t>(((idx[a] % n) + n) % n);
          }
          if (dist2 <= r2) vals[grid.index(w[0], w[1], w[2])] = model.level;
        }
      }
    }
  }
  return DensityField(grid, std::move(vals), Boundary::periodic);
}

ErgodicTable ergodic_average_experiment(const StationaryModel& model,
                                        const std::vector<double>& t_list, std::size_t n_seeds,
                                        double spacing, double extent) {
  if (t_list.empty() || n_seeds < 1) {
    throw Error("invalid_parameter", "need at least one t and one seed");
  }
  for (std::size_t i = 1; i < t_list.size(); ++i) {
    if (!(t_list[i] > t_list[i - 1])) throw Error("invalid_parameter", "t_list must be increasing");
  }
  const std::vector<double> lo{-0.5 * extent, -0.5 * extent};
  const std::vector<double> hi{0.5 * extent, 0.5 * extent};
  const Grid grid = Grid::covering(lo, hi, spacing);
  const double mean = model.mean(2);

  ErgodicTable table;
  table.deviations.assign(t_list.size(), std::vector<double>(n_seeds, 0.0));
  parallel_for(n_seeds, [&](std::size_t s) {
    StationaryModel m = model;
    m.seed = model.seed + s;
    const DensityField f = sample_stationary(m, grid);
    const WindowIntegrator integ(f);
    const std::array<double, 2> centre{0.0, 0.0};
    for (std::size_t i = 0; i < t_list.size(); ++i) {
      table.deviations[i][s] = std::abs(integ.average(centre, t_list[i]) - mean);
    }
  });

  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const auto& dev = table.deviations[i];
    double sum = 0.0;
    for (double v : dev) sum += v;
    const double mu = sum / static_cast<double>(n_seeds);
    double var = 0.0;
    for (double v : dev) var += (v - mu) * (v - mu);
    const double sd = n_seeds > 1 ? std::sqrt(var / static_cast<double>(n_seeds - 1)) : 0.0;
    table.rows.push_back({t_list[i], mu, sd, n_seeds});
  }
  std::size_t wins = 0;
  for (std::size_t s = 0; s < n_seeds; ++s) {
    if (table.deviations.front()[s] > table.deviations.back()[s]) ++wins;
  }
  table.paired_decrease_fraction = static_cast<double>(wins) / static_cast<double>(n_seeds);
  return table;
}

double scaled_cube_integral(const DensityField& f, std::span<const double> lo, double side,
                            double t) {
  const int d = f.dim();
  if (static_cast<int>(lo.size()) != d) throw Error("invalid_parameter", "cube corner dimension mismatch");
  if (!(t > 0.0)) throw Error("invalid_scale", "t must be positive");
  std::array<double, 3> a{}, b{};
  for (int i = 0; i < d; ++i) {
    a[i] = t * lo[i];
    b[i] = t * (lo[i] + side);
  }
  return WindowIntegrator(f).integral(std::span<const double>(a.data(), d),
                                      std::span<const double>(b.data(), d)) /
         std::pow(t, d);
}

std::string ergodic_csv(const ErgodicTable& table) {
  std::string out = "t,mean_abs_dev,std_dev,n_seeds\n";
  char buf[128];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu\n", r.t, r.mean_abs_dev, r.std_dev,
                  r.n_seeds);
    out += buf;
  }
  return out;
}

}  // namespace configdensity
