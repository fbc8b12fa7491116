#include "polygame/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace polygame {

namespace {

std::vector<RegularizerSpec> regs_from_json(const json& j, const GameSpec& game) {
  std::vector<std::string> names;
  if (j.is_string()) {
    names.assign(static_cast<std::size_t>(game.n_agents), j.get<std::string>());
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_string()) throw ConfigError("regularizers", "entries must be strings");
      names.push_back(e.get<std::string>());
    }
  } else {
    throw ConfigError("regularizers", "must be a string or an array of strings");
  }
  if (static_cast<int>(names.size()) != game.n_agents)
    throw ConfigError("regularizers", "need one entry per agent (" + std::to_string(game.n_agents) + ")");
  std::vector<RegularizerSpec> regs;
  for (int i = 0; i < game.n_agents; ++i)
    regs.push_back({reg_kind_from_string(names[static_cast<std::size_t>(i)]),
                    game.action_counts[static_cast<std::size_t>(i)]});
  return regs;
}

void check_x0(const StrategyProfile& x0, const GameSpec& game) {
  if (static_cast<int>(x0.size()) != game.n_agents)
    throw ConfigError("x0", "need one simplex vector per agent");
  for (int i = 0; i < game.n_agents; ++i) {
    const Vec& xi = x0[static_cast<std::size_t>(i)];
    if (xi.size() != game.action_counts[static_cast<std::size_t>(i)])
      throw ConfigError("x0", "agent " + std::to_string(i + 1) + " vector has wrong length");
    if (std::abs(xi.sum() - 1.0) > 1e-9)
      throw ConfigError("x0", "agent " + std::to_string(i + 1) + " entries must sum to 1");
    if (!is_fully_mixed(xi))
      throw ConfigError("x0", "agent " + std::to_string(i + 1) + " must be fully mixed");
  }
}

EquilibriumReference reference_from_json(const json& j, const GameSpec& game) {
  if (j.is_string()) {
    const std::string mode = j.get<std::string>();
    if (mode == "nash") {
      const NashCertificate cert = solve_fully_mixed_nash(game);
      return fixed_point_reference(cert.strategy);
    }
    throw ConfigError("reference", "unknown mode '" + mode + "' (expected \"nash\" or an object)");
  }
  if (j.is_array()) {
    StrategyProfile x_star = strategy_profile_from_json(j, "reference");
    const NashCertificate cert = verify_nash(game, x_star, 1e-8);
    if (!cert.valid)
      throw ConfigError("reference", "given point is not a Nash equilibrium (residual " +
                                         format_double(cert.residual) + ")");
    return fixed_point_reference(std::move(x_star));
  }
  if (j.is_object()) {
    if (!j.contains("base") || !j.contains("direction"))
      throw ConfigError("reference", "line reference needs 'base' and 'direction' arrays");
    const Layout layout = game.layout();
    const auto read_stacked = [&](const json& arr, const char* field) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != layout.total())
        throw ConfigError(std::string("reference.") + field,
                          "must be an array of length " + std::to_string(layout.total()));
      Vec v(layout.total());
      for (int k = 0; k < layout.total(); ++k) v[k] = arr[static_cast<std::size_t>(k)].get<double>();
      return v;
    };
    return line_reference(read_stacked(j["base"], "base"), read_stacked(j["direction"], "direction"));
  }
  throw ConfigError("reference", "must be \"nash\", a strategy profile, or a line object");
}

std::string alpha_dir_name(double alpha) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "alpha_%g", alpha);
  return buf;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "top level must be a JSON object");
  RunConfig cfg;
  cfg.echo = j;

  if (!j.contains("game")) throw ConfigError("game", "missing (preset name or inline game object)");
  if (j["game"].is_string()) {
    cfg.preset_name = j["game"].get<std::string>();
    PresetExperiment exp = preset(cfg.preset_name);
    cfg.game = std::move(exp.game);
    cfg.regs = std::move(exp.regs);
    cfg.params = exp.params;
    cfg.x0 = std::move(exp.x0);
    cfg.integrator = exp.integrator;
    cfg.reference = std::move(exp.reference);
  } else if (j["game"].is_object()) {
    cfg.game = game_from_json(j["game"]);
    cfg.regs.clear();
    for (int c : cfg.game.action_counts) cfg.regs.push_back({RegKind::Entropic, c});
    cfg.params = {Variant::Ftrl, 0.0, 0};
    cfg.x0.clear();
    for (int c : cfg.game.action_counts)
      cfg.x0.push_back(Vec::Constant(c, 1.0 / static_cast<double>(c)));
  } else {
    throw ConfigError("game", "must be a preset name or an inline game object");
  }

  if (j.contains("regularizers")) cfg.regs = regs_from_json(j["regularizers"], cfg.game);
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw ConfigError("variant", "must be a string");
    cfg.params.variant = variant_from_string(j["variant"].get<std::string>());
  }
  if (j.contains("alpha")) {
    if (j["alpha"].is_number()) {
      cfg.params.alpha = j["alpha"].get<double>();
    } else if (j["alpha"].is_array()) {
      for (const auto& a : j["alpha"]) {
        if (!a.is_number()) throw ConfigError("alpha", "entries must be numbers");
        cfg.alphas.push_back(a.get<double>());
      }
      if (!cfg.alphas.empty()) cfg.params.alpha = cfg.alphas.front();
    } else {
      throw ConfigError("alpha", "must be a number or an array of numbers");
    }
  }
  if (cfg.params.alpha < 0.0) throw ConfigError("alpha", "must be nonnegative");
  for (double a : cfg.alphas)
    if (a < 0.0) throw ConfigError("alpha", "must be nonnegative");
  if (j.contains("power_index")) {
    if (!j["power_index"].is_number_integer() || j["power_index"].get<int>() < 0)
      throw ConfigError("power_index", "must be a nonnegative integer");
    cfg.params.power_index = j["power_index"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed", "must be a nonnegative integer");
    const auto seed = j["seed"].get<std::int64_t>();
    if (seed < 0) throw ConfigError("seed", "must be a nonnegative integer");
    // The seed re-draws a preset's random initial condition; explicit x0 wins.
    if ((cfg.preset_name == "mp3" || cfg.preset_name == "mp3-euclid") && !j.contains("x0"))
      cfg.x0 = mp3_random_x0(static_cast<std::uint64_t>(seed));
  }
  if (j.contains("x0")) cfg.x0 = strategy_profile_from_json(j["x0"], "x0");
  check_x0(cfg.x0, cfg.game);

  if (j.contains("integrator")) {
    const json& integ = j["integrator"];
    if (!integ.is_object()) throw ConfigError("integrator", "must be an object");
    if (integ.contains("method")) cfg.integrator.method = method_from_string(integ["method"].get<std::string>());
    if (integ.contains("dt")) cfg.integrator.dt = integ["dt"].get<double>();
    if (integ.contains("T")) cfg.integrator.horizon = integ["T"].get<double>();
    if (integ.contains("stride")) cfg.integrator.record_stride = integ["stride"].get<int>();
    if (integ.contains("rel_tol")) cfg.integrator.rel_tol = integ["rel_tol"].get<double>();
    if (integ.contains("abs_tol")) cfg.integrator.abs_tol = integ["abs_tol"].get<double>();
    validate(cfg.integrator);
  }
  if (j.contains("reference")) cfg.reference = reference_from_json(j["reference"], cfg.game);
  if (cfg.preset_name.empty() && !j.contains("reference")) {
    // Inline games default to the solved interior equilibrium.
    cfg.reference = fixed_point_reference(solve_fully_mixed_nash(cfg.game).strategy);
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output", "must be a string path");
    cfg.output_dir = j["output"].get<std::string>();
  }

  // Surface structural problems (shape mismatches, zero-sum violations) now,
  // as config errors.
  try {
    make_flow_system(cfg.game, cfg.regs, cfg.params);
  } catch (const StructuralError& err) {
    throw ConfigError("game", err.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config", std::string("JSON parse error in '") + path + "': " + err.what());
  }
  return parse_run_config(j);
}

RunResult execute_run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  const FlowSystem sys = make_flow_system(cfg.game, cfg.regs, cfg.params);
  const PayoffProfile y0 = init_dual_state(cfg.regs, cfg.x0);

  RunResult result;
  result.trajectory = integrate(sys, y0, cfg.integrator);
  const EquilibriumReference ref = cfg.reference;
  result.observables = standard_series(result.trajectory, sys, ref);

  const auto find = [&](const std::string& name) -> const ObservableSeries& {
    for (const ObservableSeries& s : result.observables)
      if (s.name == name) return s;
    throw StructuralError("missing observable " + name);
  };
  const ObservableSeries& fenchel = find("fenchel");
  const ObservableSeries& dist = find("dist");

  double max_drift = 0.0, max_increase = 0.0;
  for (std::size_t k = 0; k < fenchel.values.size(); ++k) {
    max_drift = std::max(max_drift, std::abs(fenchel.values[k] - fenchel.values.front()));
    if (k > 0) max_increase = std::max(max_increase, fenchel.values[k] - fenchel.values[k - 1]);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json summary;
  summary["preset"] = cfg.preset_name.empty() ? json(nullptr) : json(cfg.preset_name);
  summary["game"] = game_to_json(cfg.game);
  summary["variant"] = to_string(cfg.params.variant);
  summary["alpha"] = cfg.params.alpha;
  summary["power_index"] = cfg.params.power_index;
  summary["final"] = {{"t", result.trajectory.times.back()},
                      {"x", strategy_profile_to_json(result.trajectory.x_states.back())},
                      {"y", strategy_profile_to_json(result.trajectory.y_states.back())}};
  summary["fenchel"] = {{"initial", fenchel.values.front()},
                        {"final", fenchel.values.back()},
                        {"drift_rel", max_drift / std::max(1.0, std::abs(fenchel.values.front()))},
                        {"max_step_increase", max_increase}};
  summary["distance"] = {{"initial", dist.values.front()}, {"final", dist.values.back()}};
  summary["wall_time_s"] = wall;
  summary["config"] = cfg.echo;
  result.summary = std::move(summary);
  return result;
}

void write_run_outputs(const RunResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/trajectory.csv");
    write_trajectory_csv(out, result.trajectory);
  }
  {
    std::ofstream out(dir + "/observables.csv");
    write_observables_csv(out, result.observables);
  }
  {
    std::ofstream out(dir + "/summary.json");
    out << result.summary.dump(2) << '\n';
  }
}

std::vector<SweepRow> execute_sweep(const RunConfig& cfg, int jobs) {
  if (cfg.alphas.empty())
    throw ConfigError("alpha", "sweep needs a nonempty array of alpha values");

  std::vector<double> alphas;
  for (double a : cfg.alphas) {
    bool seen = false;
    for (double b : alphas) seen = seen || b == a;
    if (seen)
      std::cerr << "warning: duplicate alpha " << a << " ignored\n";
    else
      alphas.push_back(a);
  }

  std::vector<SweepRow> rows(alphas.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(alphas.size())));

  const auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= alphas.size()) return;
      SweepRow& row = rows[k];
      row.alpha = alphas[k];
      try {
        RunConfig one = cfg;
        one.params.alpha = alphas[k];
        one.alphas.clear();
        one.echo["alpha"] = alphas[k];
        const RunResult result = execute_run(one);
        write_run_outputs(result, cfg.output_dir + "/" + alpha_dir_name(alphas[k]));
        row.final_dist = result.summary["distance"]["final"].get<double>();
        row.final_fenchel = result.summary["fenchel"]["final"].get<double>();
        row.ok = true;
      } catch (const std::exception& err) {
        row.ok = false;
        row.error = err.what();
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/sweep.csv");
  write_sweep_csv(out, rows);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,final_dist,final_fenchel\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.alpha) << ',';
    if (row.ok)
      out << format_double(row.final_dist) << ',' << format_double(row.final_fenchel);
    else
      out << "nan,nan";
    out << '\n';
  }
}

}  // namespace polygame
