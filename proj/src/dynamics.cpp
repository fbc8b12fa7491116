#include "polygame/dynamics.hpp"

#include <Eigen/LU>

#include <cmath>
#include <utility>

namespace polygame {

Variant variant_from_string(const std::string& name) {
  if (name == "ftrl") return Variant::Ftrl;
  if (name == "dftrl") return Variant::Dftrl;
  if (name == "co") return Variant::Co;
  if (name == "ceg") return Variant::Ceg;
  if (name == "cnm") return Variant::Cnm;
  throw ConfigError("variant", "unknown variant '" + name + "' (expected ftrl|dftrl|co|ceg|cnm)");
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::Ftrl: return "ftrl";
    case Variant::Dftrl: return "dftrl";
    case Variant::Co: return "co";
    case Variant::Ceg: return "ceg";
    case Variant::Cnm: return "cnm";
  }
  return "?";
}

DiscreteRule discrete_rule_from_string(const std::string& name) {
  if (name == "optimistic") return DiscreteRule::Optimistic;
  if (name == "extragradient") return DiscreteRule::ExtraGradient;
  if (name == "negative-momentum") return DiscreteRule::NegativeMomentum;
  throw ConfigError("rule", "unknown discrete rule '" + name +
                            "' (expected optimistic|extragradient|negative-momentum)");
}

std::string to_string(DiscreteRule rule) {
  switch (rule) {
    case DiscreteRule::Optimistic: return "optimistic";
    case DiscreteRule::ExtraGradient: return "extragradient";
    case DiscreteRule::NegativeMomentum: return "negative-momentum";
  }
  return "?";
}

FlowSystem make_flow_system(GameSpec game, std::vector<RegularizerSpec> regs, FlowParams params) {
  if (static_cast<int>(regs.size()) != game.n_agents)
    throw StructuralError("make_flow_system: need one regularizer per agent");
  for (int i = 0; i < game.n_agents; ++i)
    if (regs[static_cast<std::size_t>(i)].dim != game.action_counts[static_cast<std::size_t>(i)])
      throw StructuralError("make_flow_system: regularizer dim mismatch for agent " + std::to_string(i));
  if (params.alpha < 0.0) throw StructuralError("make_flow_system: alpha must be nonnegative");
  if (params.power_index < 0) throw StructuralError("make_flow_system: power_index must be nonnegative");
  if (params.variant == Variant::Ftrl) params.alpha = 0.0;
  if (game.sigma != -1) throw StructuralError("make_flow_system: the learning dynamics need a zero-sum game");
  const ZeroSumReport report = validate_zero_sum(game);
  if (!report.valid())
    throw StructuralError("make_flow_system: game violates the zero-sum structure (max deviation " +
                          std::to_string(report.max_deviation) + ")");
  return FlowSystem{std::move(game), std::move(regs), params};
}

namespace {

std::vector<Mat> dual_hessians(const FlowSystem& sys, const PayoffProfile& y) {
  std::vector<Mat> hs;
  hs.reserve(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) hs.push_back(dual_hessian(sys.regs[j], y[j]));
  return hs;
}

// (Bu)_i = sum_j A^{ij} u_j.
PayoffProfile apply_blocks(const GameSpec& game, const std::vector<Vec>& u) {
  PayoffProfile out;
  out.reserve(static_cast<std::size_t>(game.n_agents));
  for (int i = 0; i < game.n_agents; ++i) {
    Vec v = Vec::Zero(game.action_counts[static_cast<std::size_t>(i)]);
    for (int j = 0; j < game.n_agents; ++j) v += game.block(i, j) * u[static_cast<std::size_t>(j)];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PayoffProfile ftrl_field(const FlowSystem& sys, const PayoffProfile& y) {
  return aggregate_payoff_field(sys.game, mirror_map(sys.regs, y));
}

PayoffProfile dftrl_perturbation(const FlowSystem& sys, const PayoffProfile& y, int m) {
  if (m < 0) throw StructuralError("dftrl_perturbation: power index must be nonnegative");
  const StrategyProfile x = mirror_map(sys.regs, y);
  const std::vector<Mat> hess = dual_hessians(sys, y);

  // Left-to-right accumulation: innermost aggregate field, then 4m+1
  // alternating Hessian / payoff-block applications.
  PayoffProfile chain = aggregate_payoff_field(sys.game, x);
  for (int step = 0; step < 4 * m + 1; ++step) {
    std::vector<Vec> smoothed(chain.size());
    for (std::size_t j = 0; j < chain.size(); ++j) smoothed[j] = hess[j] * chain[j];
    chain = apply_blocks(sys.game, smoothed);
  }
  return chain;
}

PayoffProfile dftrl_field(const FlowSystem& sys, const PayoffProfile& y) {
  PayoffProfile field = ftrl_field(sys, y);
  if (sys.params.alpha == 0.0) return field;
  const PayoffProfile g = dftrl_perturbation(sys, y, sys.params.power_index);
  for (std::size_t i = 0; i < field.size(); ++i) field[i] += sys.params.alpha * g[i];
  return field;
}

PayoffProfile co_field(const FlowSystem& sys, const PayoffProfile& y, double alpha) {
  const Layout layout = sys.game.layout();
  const StrategyProfile x = mirror_map(sys.regs, y);
  const Vec rhs = layout.pack(aggregate_payoff_field(sys.game, x));
  if (alpha == 0.0) return layout.unpack(rhs);

  const std::vector<Mat> hess = dual_hessians(sys, y);
  Mat system = Mat::Identity(layout.total(), layout.total());
  for (int i = 0; i < sys.game.n_agents; ++i)
    for (int j = 0; j < sys.game.n_agents; ++j)
      system.block(layout.offset(i), layout.offset(j), layout.size(i), layout.size(j)) -=
          alpha * sys.game.block(i, j) * hess[static_cast<std::size_t>(j)];

  // For zero-sum blocks with PSD Hessians the coupling spectrum is purely
  // imaginary, so I - alpha*B stays invertible for every real alpha; the
  // checks below guard hand-built systems that break those assumptions.
  Eigen::FullPivLU<Mat> lu(system);
  if (!lu.isInvertible())
    throw SolveError("co_field: implicit system singular at alpha=" + std::to_string(alpha));
  const Vec solution = lu.solve(rhs);
  const double residual = (system * solution - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    throw SolveError("co_field: solve residual " + std::to_string(residual) + " exceeds 1e-8 at alpha=" +
                     std::to_string(alpha));
  return layout.unpack(solution);
}

PayoffProfile ceg_field(const FlowSystem& sys, const PayoffProfile& y, double alpha) {
  const StrategyProfile x = mirror_map(sys.regs, y);
  const PayoffProfile shift = aggregate_payoff_field(sys.game, x);
  StrategyProfile lookahead(y.size());
  for (std::size_t j = 0; j < y.size(); ++j)
    lookahead[j] = mirror_map(sys.regs[j], Vec(y[j] + alpha * shift[j]));
  return aggregate_payoff_field(sys.game, lookahead);
}

PayoffProfile cnm_field(const FlowSystem& sys, const PayoffProfile& y, double alpha) {
  PayoffProfile field = ftrl_field(sys, y);
  for (Vec& component : field) component /= 1.0 + alpha;
  return field;
}

PayoffProfile flow_field(const FlowSystem& sys, const PayoffProfile& y) {
  switch (sys.params.variant) {
    case Variant::Ftrl: return ftrl_field(sys, y);
    case Variant::Dftrl: return dftrl_field(sys, y);
    case Variant::Co: return co_field(sys, y, sys.params.alpha);
    case Variant::Ceg: return ceg_field(sys, y, sys.params.alpha);
    case Variant::Cnm: return cnm_field(sys, y, sys.params.alpha);
  }
  throw StructuralError("unreachable variant");
}

StrategyProfile derived_x_field(const FlowSystem& sys, const PayoffProfile& y) {
  const PayoffProfile ydot = flow_field(sys, y);
  StrategyProfile xdot(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) xdot[i] = dual_hessian(sys.regs[i], y[i]) * ydot[i];
  return xdot;
}

PayoffProfile discrete_step(const FlowSystem& sys, DiscreteRule rule, const PayoffProfile& y,
                            StepHistory& history, double eps, double alpha) {
  const StrategyProfile x = mirror_map(sys.regs, y);
  PayoffProfile next(y.size());

  switch (rule) {
    case DiscreteRule::Optimistic: {
      const StrategyProfile& x_prev = history.x_prev ? *history.x_prev : x;
      std::vector<Vec> momentum(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) momentum[j] = x[j] - x_prev[j];
      const PayoffProfile drive = aggregate_payoff_field(sys.game, x);
      const PayoffProfile kick = apply_blocks(sys.game, momentum);
      for (std::size_t i = 0; i < y.size(); ++i) next[i] = y[i] + eps * drive[i] + alpha * kick[i];
      break;
    }
    case DiscreteRule::ExtraGradient: {
      const PayoffProfile field = ceg_field(sys, y, alpha);
      for (std::size_t i = 0; i < y.size(); ++i) next[i] = y[i] + eps * field[i];
      break;
    }
    case DiscreteRule::NegativeMomentum: {
      const PayoffProfile& y_prev = history.y_prev ? *history.y_prev : y;
      const PayoffProfile drive = aggregate_payoff_field(sys.game, x);
      for (std::size_t i = 0; i < y.size(); ++i)
        next[i] = y[i] + eps * drive[i] - alpha * (y[i] - y_prev[i]);
      break;
    }
  }

  history.x_prev = x;
  history.y_prev = y;
  return next;
}

}  // namespace polygame
