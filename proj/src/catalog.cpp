#include "polygame/catalog.hpp"

#include <cmath>

#include "polygame/rng.hpp"

namespace polygame {

GameSpec weighted_rps(double a, double b, double c) {
  GameSpec game = make_game(2, {3, 3}, -1);
  Mat block(3, 3);
  block << 0, -a, b,
           a, 0, -c,
          -b, c, 0;
  set_block_pair(game, 0, 1, block);
  return game;
}

StrategyProfile weighted_rps_nash(double a, double b, double c) {
  const double total = a + b + c;
  if (!(a > 0.0 && b > 0.0 && c > 0.0))
    throw DomainError("weighted_rps_nash: the interior closed form needs a,b,c > 0");
  Vec x(3);
  x << c / total, b / total, a / total;
  return {x, x};
}

GameSpec matching_pennies_3(double a) {
  GameSpec game = make_game(3, {2, 2, 2}, -1);
  Mat block(2, 2);
  block << a, -1,
          -1, a;
  // A^{12} = A^{23} = A^{31}; the reversed pairs follow by zero-sum reflection.
  set_block_pair(game, 0, 1, block);
  set_block_pair(game, 1, 2, block);
  set_block_pair(game, 2, 0, block);
  return game;
}

EquilibriumReference matching_pennies_line() {
  Vec base(6), direction(6);
  base << 0, 1, 0, 1, 0, 1;
  direction << 1, -1, 1, -1, 1, -1;
  return line_reference(base, direction);
}

GameSpec random_zero_sum(std::uint64_t seed, int n_agents, const std::vector<int>& action_counts,
                         double magnitude) {
  if (n_agents < 2) throw StructuralError("random_zero_sum: need at least two agents");
  GameSpec game = make_game(n_agents, action_counts, -1);
  Xoshiro256pp rng(seed);
  for (int i = 0; i < n_agents; ++i)
    for (int j = i + 1; j < n_agents; ++j) {
      Mat block(action_counts[static_cast<std::size_t>(i)], action_counts[static_cast<std::size_t>(j)]);
      for (Eigen::Index r = 0; r < block.rows(); ++r)
        for (Eigen::Index c = 0; c < block.cols(); ++c) block(r, c) = rng.uniform(-magnitude, magnitude);
      set_block_pair(game, i, j, block);
    }
  return game;
}

StrategyProfile mp3_random_x0(std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  StrategyProfile x0;
  for (int i = 0; i < 3; ++i) {
    const double p = 0.2 + 0.6 * rng.uniform();
    Vec xi(2);
    xi << p, 1.0 - p;
    x0.push_back(xi);
  }
  return x0;
}

namespace {

StrategyProfile mp3_initial_condition() {
  // The presets pin seed 42 for reproducibility; the first coordinates come
  // out as (0.68858308707374588, 0.39129262403699671, 0.79033650090649334).
  return mp3_random_x0(42);
}

IntegratorConfig default_integrator() {
  IntegratorConfig cfg;
  cfg.method = Method::Rk4;
  cfg.dt = 0.01;
  cfg.horizon = 100.0;
  cfg.record_stride = 10;
  return cfg;
}

}  // namespace

PresetExperiment preset(const std::string& name) {
  PresetExperiment exp;
  exp.name = name;
  exp.integrator = default_integrator();

  if (name == "rps") {
    exp.game = weighted_rps(1, 1, 1);
    exp.regs = {{RegKind::Entropic, 3}, {RegKind::Entropic, 3}};
    Vec x0(3);
    x0 << 0.1, 0.1, 0.8;
    exp.x0 = {x0, x0};
    exp.params = {Variant::Dftrl, 0.15, 0};
    exp.studied_alphas = {0.0, 0.15};
    exp.reference = fixed_point_reference(weighted_rps_nash(1, 1, 1));
    return exp;
  }
  if (name == "wrps") {
    exp.game = weighted_rps(1, 2, 3);
    exp.regs = {{RegKind::Entropic, 3}, {RegKind::Entropic, 3}};
    Vec x01(3), x02(3);
    x01 << 0.1, 0.1, 0.8;
    x02 << 0.2, 0.6, 0.2;
    exp.x0 = {x01, x02};
    exp.params = {Variant::Dftrl, 0.05, 0};
    exp.studied_alphas = {0.0, 0.05, 0.15};
    exp.reference = fixed_point_reference(weighted_rps_nash(1, 2, 3));
    return exp;
  }
  if (name == "mp3") {
    exp.game = matching_pennies_3(1.0);
    exp.regs = {{RegKind::Entropic, 2}, {RegKind::Entropic, 2}, {RegKind::Entropic, 2}};
    exp.x0 = mp3_initial_condition();
    exp.params = {Variant::Dftrl, 0.1, 0};
    exp.studied_alphas = {0.0, 0.1};
    exp.reference = matching_pennies_line();
    return exp;
  }
  if (name == "mp3-euclid") {
    exp.game = matching_pennies_3(1.0);
    exp.regs = {{RegKind::Euclidean, 2}, {RegKind::Euclidean, 2}, {RegKind::Euclidean, 2}};
    exp.x0 = mp3_initial_condition();
    exp.params = {Variant::Dftrl, 0.1, 0};
    exp.studied_alphas = {0.0, 0.05, 0.1};
    exp.reference = matching_pennies_line();
    return exp;
  }

  std::string available;
  for (const std::string& known : preset_names()) available += (available.empty() ? "" : ", ") + known;
  throw ConfigError("game", "unknown preset '" + name + "' (available: " + available + ")");
}

std::vector<std::string> preset_names() { return {"rps", "wrps", "mp3", "mp3-euclid"}; }

}  // namespace polygame
