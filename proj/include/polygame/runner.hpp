#ifndef POLYGAME_RUNNER_HPP
#define POLYGAME_RUNNER_HPP

#include <string>
#include <vector>

#include "polygame/catalog.hpp"
#include "polygame/serialize.hpp"

namespace polygame {

// A fully resolved experiment definition: preset defaults merged with the
// overrides from a JSON config file.
struct RunConfig {
  std::string preset_name;  // empty for inline games
  GameSpec game;
  std::vector<RegularizerSpec> regs;
  FlowParams params;
  StrategyProfile x0;
  IntegratorConfig integrator;
  EquilibriumReference reference;
  std::vector<double> alphas;  // sweep values; run uses params.alpha
  std::string output_dir = "out";
  json echo;  // the raw config, echoed into summaries
};

// Parses and validates a config object; throws ConfigError naming the field.
RunConfig parse_run_config(const json& j);
RunConfig load_run_config(const std::string& path);

struct RunResult {
  Trajectory trajectory;
  std::vector<ObservableSeries> observables;
  json summary;
};

// Integrates the configured system and evaluates the standard observable
// bundle.  Deterministic: identical configs yield identical trajectories.
RunResult execute_run(const RunConfig& cfg);

// Writes trajectory.csv, observables.csv and summary.json into dir.
void write_run_outputs(const RunResult& result, const std::string& dir);

struct SweepRow {
  double alpha = 0.0;
  double final_dist = 0.0;
  double final_fenchel = 0.0;
  bool ok = false;
  std::string error;
};

// One run per alpha (deduplicated, order preserved) into per-alpha output
// directories, executed on up to `jobs` threads; writes the combined
// sweep.csv.  Failed alphas are recorded per-row and do not abort the rest.
std::vector<SweepRow> execute_sweep(const RunConfig& cfg, int jobs);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace polygame

#endif  // POLYGAME_RUNNER_HPP
