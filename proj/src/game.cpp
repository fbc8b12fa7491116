#include "polygame/game.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace polygame {

namespace {

void check_profile(const GameSpec& game, const StrategyProfile& x, const char* what) {
  if (static_cast<int>(x.size()) != game.n_agents)
    throw StructuralError(std::string(what) + ": profile has " + std::to_string(x.size()) +
                          " agents, game has " + std::to_string(game.n_agents));
  for (int i = 0; i < game.n_agents; ++i)
    if (x[static_cast<std::size_t>(i)].size() != game.action_counts[static_cast<std::size_t>(i)])
      throw StructuralError(std::string(what) + ": agent " + std::to_string(i) + " vector has dim " +
                            std::to_string(x[static_cast<std::size_t>(i)].size()) + ", expected " +
                            std::to_string(game.action_counts[static_cast<std::size_t>(i)]));
}

void check_agent(const GameSpec& game, int agent, const char* what) {
  if (agent < 0 || agent >= game.n_agents)
    throw StructuralError(std::string(what) + ": agent index " + std::to_string(agent) + " out of range [0," +
                          std::to_string(game.n_agents) + ")");
}

}  // namespace

GameSpec make_game(int n_agents, const std::vector<int>& action_counts, int sigma) {
  if (n_agents < 1) throw StructuralError("make_game: need at least one agent");
  if (static_cast<int>(action_counts.size()) != n_agents)
    throw StructuralError("make_game: action_counts size mismatch");
  for (int c : action_counts)
    if (c < 1) throw StructuralError("make_game: action counts must be positive");
  if (sigma != -1 && sigma != 1) throw StructuralError("make_game: sigma must be -1 or +1");

  GameSpec game;
  game.n_agents = n_agents;
  game.action_counts = action_counts;
  game.sigma = sigma;
  game.blocks.resize(static_cast<std::size_t>(n_agents));
  for (int i = 0; i < n_agents; ++i) {
    auto& row = game.blocks[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n_agents));
    for (int j = 0; j < n_agents; ++j)
      row.push_back(Mat::Zero(action_counts[static_cast<std::size_t>(i)],
                              action_counts[static_cast<std::size_t>(j)]));
  }
  return game;
}

void set_block(GameSpec& game, int i, int j, const Mat& value) {
  check_agent(game, i, "set_block");
  check_agent(game, j, "set_block");
  if (i == j) throw StructuralError("set_block: diagonal blocks are identically zero");
  if (value.rows() != game.action_counts[static_cast<std::size_t>(i)] ||
      value.cols() != game.action_counts[static_cast<std::size_t>(j)])
    throw StructuralError("set_block: block (" + std::to_string(i) + "," + std::to_string(j) + ") must be " +
                          std::to_string(game.action_counts[static_cast<std::size_t>(i)]) + "x" +
                          std::to_string(game.action_counts[static_cast<std::size_t>(j)]));
  game.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
}

void set_block_pair(GameSpec& game, int i, int j, const Mat& value) {
  set_block(game, i, j, value);
  set_block(game, j, i, Mat(game.sigma * value.transpose()));
}

ZeroSumReport validate_zero_sum(const GameSpec& game) {
  for (int i = 0; i < game.n_agents; ++i)
    for (int j = 0; j < game.n_agents; ++j) {
      const Mat& b = game.block(i, j);
      if (b.rows() != game.action_counts[static_cast<std::size_t>(i)] ||
          b.cols() != game.action_counts[static_cast<std::size_t>(j)])
        throw StructuralError("validate_zero_sum: block (" + std::to_string(i) + "," + std::to_string(j) +
                              ") has shape " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                              ", inconsistent with action counts");
    }

  ZeroSumReport report;
  for (int i = 0; i < game.n_agents; ++i) {
    const double diag = game.block(i, i).cwiseAbs().maxCoeff();
    if (diag > zero_sum_tol) {
      report.violations.emplace_back(i, i);
      report.max_deviation = std::max(report.max_deviation, diag);
    }
  }
  for (int i = 0; i < game.n_agents; ++i)
    for (int j = i + 1; j < game.n_agents; ++j) {
      const double dev = (game.block(j, i) + game.block(i, j).transpose()).cwiseAbs().maxCoeff();
      if (dev > zero_sum_tol) {
        report.violations.emplace_back(j, i);
        report.max_deviation = std::max(report.max_deviation, dev);
      }
    }
  return report;
}

double utility(const GameSpec& game, const StrategyProfile& x, int agent) {
  check_agent(game, agent, "utility");
  check_profile(game, x, "utility");
  double u = 0.0;
  for (int j = 0; j < game.n_agents; ++j) {
    if (j == agent) continue;
    u += x[static_cast<std::size_t>(agent)].dot(game.block(agent, j) * x[static_cast<std::size_t>(j)]);
  }
  return u;
}

double total_utility(const GameSpec& game, const StrategyProfile& x) {
  double total = 0.0;
  for (int i = 0; i < game.n_agents; ++i) total += utility(game, x, i);
  return total;
}

PayoffProfile aggregate_payoff_field(const GameSpec& game, const StrategyProfile& x) {
  check_profile(game, x, "aggregate_payoff_field");
  PayoffProfile field;
  field.reserve(static_cast<std::size_t>(game.n_agents));
  for (int i = 0; i < game.n_agents; ++i) {
    Vec v = Vec::Zero(game.action_counts[static_cast<std::size_t>(i)]);
    for (int j = 0; j < game.n_agents; ++j) v += game.block(i, j) * x[static_cast<std::size_t>(j)];
    field.push_back(std::move(v));
  }
  return field;
}

NashCertificate solve_fully_mixed_nash(const GameSpec& game) {
  const Layout layout = game.layout();
  const int dim = layout.total();
  const int n = game.n_agents;

  // Unknowns: stacked x (dim) then lambda (n).
  // Rows: stationarity (dim), simplex sums (n), sum lambda = 0 (1).
  Mat system = Mat::Zero(dim + n + 1, dim + n);
  Vec rhs = Vec::Zero(dim + n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      system.block(layout.offset(i), layout.offset(j), layout.size(i), layout.size(j)) = game.block(i, j);
    system.block(layout.offset(i), dim + i, layout.size(i), 1).setConstant(-1.0);
    system.block(dim + i, layout.offset(i), 1, layout.size(i)).setConstant(1.0);
    rhs[dim + i] = 1.0;
    system(dim + n, dim + i) = 1.0;
  }

  Eigen::CompleteOrthogonalDecomposition<Mat> cod(system);
  const Vec solution = cod.solve(rhs);
  const double residual = (system * solution - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    throw SolveError("no fully-mixed equilibrium found (stationarity system inconsistent, residual " +
                     std::to_string(residual) + ")");

  NashCertificate cert;
  cert.strategy = layout.unpack(solution.head(dim));
  cert.multipliers = solution.tail(n);
  cert.residual = residual;
  cert.unique = cod.rank() == dim + n;
  for (int i = 0; i < n; ++i)
    if (!is_fully_mixed(cert.strategy[static_cast<std::size_t>(i)]))
      throw SolveError("equilibrium not interior (agent " + std::to_string(i) + " touches the boundary)");
  return cert;
}

NashCertificate verify_nash(const GameSpec& game, const StrategyProfile& x, double tol) {
  check_profile(game, x, "verify_nash");
  if (!is_fully_mixed(x)) throw DomainError("verify_nash: profile is not fully mixed");

  const PayoffProfile field = aggregate_payoff_field(game, x);
  NashCertificate cert;
  cert.strategy = x;
  cert.multipliers = Vec(game.n_agents);
  for (int i = 0; i < game.n_agents; ++i) {
    const Vec& v = field[static_cast<std::size_t>(i)];
    const double lambda = v.mean();
    cert.multipliers[i] = lambda;
    cert.residual = std::max(cert.residual, (v.array() - lambda).abs().maxCoeff());
  }
  cert.valid = cert.residual <= tol && std::abs(cert.multipliers.sum()) <= tol;
  return cert;
}

}  // namespace polygame
