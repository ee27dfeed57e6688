// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 configuration or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "configdensity/bounds.hpp"
#include "configdensity/density.hpp"
#include "configdensity/error.hpp"
#include "configdensity/field.hpp"
#include "configdensity/functionals.hpp"
#include "configdensity/stationary.hpp"
#include "configdensity/sweep.hpp"
#include "configdensity/verify.hpp"

namespace cd = configdensity;
using nlohmann::json;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cd::Error("io_error", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cd::Error("io_error", "cannot write " + path);
  out << text;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw cd::Error("config_error", path + ": " + e.what());
  }
}

// Every analysis command takes its field either from a .dfield file or from
// a JSON config holding generator/grid/boundary keys.
struct FieldSource {
  std::string field_path;
  std::string config_path;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--field", field_path, "Field file (.dfield)");
    auto* c = cmd->add_option("--config", config_path, "JSON config with generator and grid");
    f->excludes(c);
  }

  cd::DensityField load() const {
    if (!field_path.empty()) return cd::load_field(field_path);
    if (!config_path.empty()) return cd::generate(cd::field_config_from_json(read_json(config_path)));
    throw cd::Error("config_error", "one of --field or --config is required");
  }
};

json result_json(const cd::FunctionalResult& r) {
  json j{{"functional", r.name}, {"value", r.value}, {"method", cd::to_string(r.method)},
         {"t", r.t},           {"circle_nodes", r.circle_nodes}, {"ray_nodes", r.ray_nodes}};
  if (r.alpha) j["alpha"] = *r.alpha;
  return j;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration functionals of density fields"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a field from a JSON config");
  std::string gen_config, gen_out;
  gen->add_option("--config", gen_config, "JSON config with generator and grid")->required();
  gen->add_option("-o,--out", gen_out, "Output .dfield path")->required();

  // pair
  auto* pair = app.add_subcommand("pair", "Pair correlation I(g, t)");
  FieldSource pair_src;
  pair_src.attach(pair);
  double pair_t = 1.0;
  std::string pair_method = "spatial";
  std::size_t pair_nodes = 0;
  pair->add_option("-t,--t", pair_t, "Scale")->required();
  pair->add_option("--method", pair_method, "spatial or spectral")
      ->check(CLI::IsMember({"spatial", "spectral"}));
  pair->add_option("--circle-nodes", pair_nodes, "Circle nodes (0 = automatic)");

  // triangle
  auto* tri = app.add_subcommand("triangle", "Triangle functional at scale t and area alpha t^2");
  FieldSource tri_src;
  tri_src.attach(tri);
  double tri_t = 1.0, tri_alpha = 0.5;
  std::optional<double> tri_lambda2;
  cd::QuadratureOptions tri_q;
  tri->add_option("-t,--t", tri_t, "Scale");
  tri->add_option("--alpha", tri_alpha, "Triangle area at unit scale");
  tri->add_option("--lambda2", tri_lambda2, "Also evaluate the Poisson-smoothed variant");
  tri->add_option("--circle-nodes", tri_q.circle_nodes, "Circle nodes (0 = automatic)");
  tri->add_option("--ray-nodes", tri_q.ray_nodes, "Gauss-Laguerre nodes");

  // colinear
  auto* col = app.add_subcommand("colinear", "Colinear triple functional");
  FieldSource col_src;
  col_src.attach(col);
  double col_t = 1.0;
  std::size_t col_dirs = 0;
  col->add_option("-t,--t", col_t, "Scale")->required();
  col->add_option("--n-dirs", col_dirs, "Directions (0 = default)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
  std::string sweep_config, sweep_out, sweep_svg_path;
  sweep->add_option("--config", sweep_config, "Sweep config (JSON)")->required();
  sweep->add_option("-o,--out", sweep_out, "CSV output (default: config output or stdout)");
  sweep->add_option("--svg", sweep_svg_path, "Also write a plot");

  // banach
  auto* banach = app.add_subcommand("banach", "Upper Banach density envelope");
  FieldSource banach_src;
  banach_src.attach(banach);
  std::vector<double> banach_t;
  cd::BanachOptions banach_opt;
  banach->add_option("--t", banach_t, "Increasing window sides")->required()->delimiter(',');
  banach->add_option("--stride", banach_opt.stride, "Centre spacing (0 = automatic)");
  banach->add_option("--tail", banach_opt.tail, "Sides entering the estimate");
  banach->add_flag("--origin-only", banach_opt.origin_only, "Only the centred window");

  // ergodic-check
  auto* erg = app.add_subcommand("ergodic-check", "Window averages of a stationary Bernoulli tiling");
  cd::StationaryModel erg_model;
  std::vector<double> erg_t{8.0, 32.0, 128.0};
  std::size_t erg_seeds = 100;
  double erg_spacing = 0.25, erg_extent = 160.0, erg_tol = 0.01, erg_paired = 0.95;
  std::string erg_out;
  erg->add_option("--delta", erg_model.delta, "Fill probability");
  erg->add_option("--cell", erg_model.cell, "Tile side");
  erg->add_option("--seed", erg_model.seed, "First seed");
  erg->add_option("--t", erg_t, "Increasing window sides")->delimiter(',');
  erg->add_option("--seeds", erg_seeds, "Number of realisations");
  erg->add_option("--spacing", erg_spacing, "Grid spacing");
  erg->add_option("--extent", erg_extent, "Periodic domain side");
  erg->add_option("--tolerance", erg_tol, "Bound on the mean deviation at the largest t");
  erg->add_option("--paired", erg_paired, "Required fraction of seeds that improve");
  erg->add_option("-o,--out", erg_out, "CSV output");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the identity and inequality suite");
  std::string ver_level = "fast", ver_fault;
  ver->add_option("--level", ver_level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--inject-fault", ver_fault, "Test hook")->check(CLI::IsMember({"j0_sign_flip"}));

  // plot
  auto* plot = app.add_subcommand("plot", "SVG of a sweep CSV");
  std::string plot_in, plot_out, plot_title = "configuration functional";
  plot->add_option("--csv", plot_in, "Sweep CSV")->required();
  plot->add_option("-o,--out", plot_out, "SVG output")->required();
  plot->add_option("--title", plot_title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) {
      const auto f = cd::generate(cd::field_config_from_json(read_json(gen_config)));
      cd::save_field(f, gen_out);
      print_json({{"out", gen_out}, {"mass", f.mass()}, {"max", f.max_value()}});
    } else if (*pair) {
      cd::QuadratureOptions q;
      q.circle_nodes = pair_nodes;
      print_json(result_json(
          cd::pair_correlation(pair_src.load(), pair_t, cd::method_from_string(pair_method), q)));
    } else if (*tri) {
      const auto f = tri_src.load();
      json j = result_json(cd::triangle_d1(f, tri_alpha, tri_t, tri_q));
      if (tri_lambda2) j["d4"] = cd::triangle_d4(f, *tri_lambda2, tri_t, tri_q).value;
      print_json(j);
    } else if (*col) {
      print_json(result_json(cd::colinear_triple(col_src.load(), col_t, col_dirs)));
    } else if (*sweep) {
      const json j = read_json(sweep_config);
      const cd::SweepConfig config = cd::sweep_config_from_json(j);
      const cd::SweepResult result = cd::run_sweep(config);
      const std::string out = sweep_out.empty() ? config.output : sweep_out;
      write_text(out, cd::sweep_csv(result.rows));
      if (!sweep_svg_path.empty()) {
        write_text(sweep_svg_path, cd::sweep_svg(result.rows, cd::to_string(config.functional)));
      }
      json summary{{"epsilon_num", result.epsilon_num}, {"rows", result.rows.size()}};
      summary["onset"] = result.onset ? json(*result.onset) : json("none");
      std::cerr << summary.dump() << '\n';
    } else if (*banach) {
      const auto env = cd::banach_density(banach_src.load(), banach_t, banach_opt);
      print_json({{"t", env.t_values},
                  {"sup_average", env.sup_averages},
                  {"stride", env.strides},
                  {"estimate", env.estimate}});
    } else if (*erg) {
      erg_model.kind = cd::StationaryModel::Kind::bernoulli_tiling;
      const auto table =
          cd::ergodic_average_experiment(erg_model, erg_t, erg_seeds, erg_spacing, erg_extent);
      if (!erg_out.empty()) write_text(erg_out, cd::ergodic_csv(table));
      const double last = table.rows.back().mean_abs_dev;
      const bool ok = last < erg_tol && table.paired_decrease_fraction >= erg_paired;
      print_json({{"mean_abs_dev_last", last},
                  {"paired_decrease_fraction", table.paired_decrease_fraction},
                  {"passed", ok}});
      return ok ? 0 : kVerifyFailed;
    } else if (*ver) {
      cd::VerifyOptions opt;
      opt.level = ver_level == "full" ? cd::VerifyLevel::full : cd::VerifyLevel::fast;
      if (ver_fault == "j0_sign_flip") opt.j0 = cd::j0_sign_flipped;
      opt.on_report = [](const cd::BoundReport& r) {
        std::cout << cd::format_report(r) << std::endl;
      };
      const auto outcome = cd::verify_suite(opt);
      std::size_t failed = 0;
      for (const auto& r : outcome.reports) failed += r.passed ? 0 : 1;
      std::cout << outcome.reports.size() << " checks, " << failed << " failed\n";
      for (const auto& r : outcome.reports) {
        if (!r.passed) std::cout << "failed: " << r.name << '\n';
      }
      return outcome.exit_code;
    } else if (*plot) {
      write_text(plot_out, cd::sweep_svg(cd::parse_sweep_csv(read_text(plot_in)), plot_title));
    }
  } catch (const cd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
