#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "polygame/runner.hpp"
#include "polygame/svg.hpp"
#include "polygame/verify.hpp"

namespace {

using namespace polygame;

int cmd_run(const std::string& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const RunResult result = execute_run(cfg);
  write_run_outputs(result, cfg.output_dir);
  std::cout << "wrote " << cfg.output_dir << "/{trajectory.csv,observables.csv,summary.json}\n";
  std::cout << "final t=" << result.summary["final"]["t"].get<double>()
            << "  dist=" << format_double(result.summary["distance"]["final"].get<double>())
            << "  fenchel=" << format_double(result.summary["fenchel"]["final"].get<double>()) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, int jobs) {
  const RunConfig cfg = load_run_config(config_path);
  const std::vector<SweepRow> rows = execute_sweep(cfg, jobs);
  bool any_failed = false;
  for (const SweepRow& row : rows) {
    if (row.ok) {
      std::cout << "alpha=" << row.alpha << "  final_dist=" << format_double(row.final_dist)
                << "  final_fenchel=" << format_double(row.final_fenchel) << '\n';
    } else {
      any_failed = true;
      std::cout << "alpha=" << row.alpha << "  FAILED: " << row.error << '\n';
    }
  }
  std::cout << "wrote " << cfg.output_dir << "/sweep.csv\n";
  return any_failed ? 2 : 0;
}

int cmd_verify(const std::string& suite) {
  const std::vector<CheckResult> results = run_verify_suite(suite);
  return print_check_results(std::cout, results) ? 0 : 1;
}

std::string file_stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Vec parse_mark(const std::vector<double>& mark) {
  Vec v(static_cast<Eigen::Index>(mark.size()));
  for (std::size_t k = 0; k < mark.size(); ++k) v[static_cast<Eigen::Index>(k)] = mark[k];
  return v;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& kind,
             const std::string& out_path, int agent, const std::vector<double>& mark) {
  std::string svg;
  if (kind == "series") {
    std::vector<ObservableSeries> all;
    for (const std::string& path : csv_paths) {
      std::ifstream in(path);
      if (!in) throw ConfigError("csv", "cannot open '" + path + "'");
      std::vector<ObservableSeries> one = observables_from_csv(in);
      for (ObservableSeries& s : one) {
        if (csv_paths.size() > 1) s.name = file_stem(path) + ":" + s.name;
        all.push_back(std::move(s));
      }
    }
    if (all.empty()) throw ConfigError("csv", "no series found");
    svg = render_series_svg(all, "observables");
  } else if (kind == "simplex" || kind == "cube") {
    if (csv_paths.size() != 1)
      throw ConfigError("csv", "simplex/cube plots take exactly one trajectory file");
    std::ifstream in(csv_paths.front());
    if (!in) throw ConfigError("csv", "cannot open '" + csv_paths.front() + "'");
    const Trajectory traj = trajectory_from_csv(in);
    if (kind == "simplex") {
      if (agent < 1 || agent > static_cast<int>(traj.x_states.front().size()))
        throw ConfigError("agent", "agent index out of range");
      std::vector<Vec> points;
      points.reserve(traj.size());
      for (const StrategyProfile& x : traj.x_states)
        points.push_back(x[static_cast<std::size_t>(agent - 1)]);
      svg = render_simplex_svg(points, "agent " + std::to_string(agent) + " strategy",
                               parse_mark(mark));
    } else {
      if (traj.x_states.front().size() != 3)
        throw ConfigError("csv", "cube plot needs a 3-agent trajectory");
      std::vector<Eigen::Vector3d> points;
      points.reserve(traj.size());
      for (const StrategyProfile& x : traj.x_states)
        points.emplace_back(x[0][0], x[1][0], x[2][0]);
      svg = render_cube_svg(points, "first coordinates");
    }
  } else {
    throw ConfigError("kind", "expected series|simplex|cube");
  }

  std::ofstream out(out_path);
  if (!out) throw ConfigError("out", "cannot write '" + out_path + "'");
  out << svg;
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polygame: FTRL/DFTRL learning dynamics in poly-matrix zero-sum games"};
  app.require_subcommand(1);

  std::string config_path, suite, kind = "series", out_path = "plot.svg";
  std::vector<std::string> csv_paths;
  std::vector<double> mark;
  int jobs = 1, agent = 1;

  CLI::App* run = app.add_subcommand("run", "integrate one experiment config");
  run->add_option("config", config_path, "JSON config file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run a config once per alpha value");
  sweep->add_option("config", config_path, "JSON config with an alpha array")->required();
  sweep->add_option("--jobs", jobs, "max concurrent runs")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "conservation|dissipation|equivalence|regularizers|all")
      ->required();

  CLI::App* plot = app.add_subcommand("plot", "render CSV output as SVG");
  plot->add_option("csv", csv_paths, "input CSV file(s)")->required()->expected(-1);
  plot->add_option("--kind", kind, "series|simplex|cube");
  plot->add_option("--out", out_path, "output SVG path");
  plot->add_option("--agent", agent, "agent shown in simplex plots (1-based)");
  plot->add_option("--mark", mark, "equilibrium marker for simplex plots (3 barycentric coords)")
      ->expected(3);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path);
    if (*sweep) return cmd_sweep(config_path, jobs);
    if (*verify) return cmd_verify(suite);
    if (*plot) return cmd_plot(csv_paths, kind, out_path, agent, mark);
  } catch (const polygame::IntegrationError& err) {
    std::cerr << "integration error: " << err.what() << '\n';
    return 2;
  } catch (const polygame::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
