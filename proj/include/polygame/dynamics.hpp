#ifndef POLYGAME_DYNAMICS_HPP
#define POLYGAME_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "polygame/game.hpp"
#include "polygame/regularizer.hpp"

namespace polygame {

// Continuous-time learning dynamics on the dual coordinates y.  The state is
// y alone; strategies are always recomputed as x = grad h*(y), which makes the
// perturbation consistency relation f^i = Hess(h*^i) g^i hold by construction.
enum class Variant { Ftrl, Dftrl, Co, Ceg, Cnm };

Variant variant_from_string(const std::string& name);
std::string to_string(Variant variant);

struct FlowParams {
  Variant variant = Variant::Ftrl;
  double alpha = 0.0;  // perturbation strength, >= 0
  int power_index = 0; // m of the (4m+1)-power perturbation (Dftrl only)
};

struct FlowSystem {
  GameSpec game;
  std::vector<RegularizerSpec> regs;
  FlowParams params;
};

// Validates shapes, alpha >= 0, m >= 0, zero-sum structure.
FlowSystem make_flow_system(GameSpec game, std::vector<RegularizerSpec> regs, FlowParams params);

// dy^i/dt = sum_j A^{ij} grad h*^j(y^j).
PayoffProfile ftrl_field(const FlowSystem& sys, const PayoffProfile& y);

// The (4m+1)-power perturbation
//   g^i = A^{i j1} H_{j1} A^{j1 j2} ... H_{j_{4m+1}} A^{j_{4m+1} j_{4m+2}} x^{j_{4m+2}}
// with H_j = Hess h*^j(y^j) and repeated agent indices summed; m = 0 is the
// plain dissipation term g^i = sum_j A^{ij} H_j sum_k A^{jk} x^k.
PayoffProfile dftrl_perturbation(const FlowSystem& sys, const PayoffProfile& y, int m);

// ftrl_field + alpha * dftrl_perturbation(m), both taken from sys.params.
PayoffProfile dftrl_field(const FlowSystem& sys, const PayoffProfile& y);

// Continuous optimistic FTRL: solves the implicit block-linear system
//   ydot^i - alpha sum_j A^{ij} H_j ydot^j = sum_j A^{ij} x^j
// by dense LU on the stacked matrix; throws SolveError when the solve residual
// exceeds 1e-8 (alpha too large).
PayoffProfile co_field(const FlowSystem& sys, const PayoffProfile& y, double alpha);

// Continuous extra-gradient FTRL:
//   ydot^i = sum_j A^{ij} grad h*^j(y^j + alpha sum_k A^{jk} x^k).
PayoffProfile ceg_field(const FlowSystem& sys, const PayoffProfile& y, double alpha);

// Continuous negative-momentum FTRL: ftrl_field / (1 + alpha).
PayoffProfile cnm_field(const FlowSystem& sys, const PayoffProfile& y, double alpha);

// Dispatches on sys.params.variant.
PayoffProfile flow_field(const FlowSystem& sys, const PayoffProfile& y);

// dx^i/dt = Hess(h*^i)(y^i) * dy^i/dt for the active variant; tangent to the
// simplex (components sum to zero).
StrategyProfile derived_x_field(const FlowSystem& sys, const PayoffProfile& y);

// Discrete one-step update rules.
enum class DiscreteRule { Optimistic, ExtraGradient, NegativeMomentum };

DiscreteRule discrete_rule_from_string(const std::string& name);
std::string to_string(DiscreteRule rule);

// One-step lookback owned by the caller, one buffer per trajectory.  On the
// first step the missing history defaults to the initial state (zero
// momentum): x(t-eps) := x(0), y(t-eps) := y(0).
struct StepHistory {
  std::optional<StrategyProfile> x_prev;
  std::optional<PayoffProfile> y_prev;
};

// Advances y by one step of the chosen rule and updates the history buffer.
PayoffProfile discrete_step(const FlowSystem& sys, DiscreteRule rule, const PayoffProfile& y,
                            StepHistory& history, double eps, double alpha);

}  // namespace polygame

#endif  // POLYGAME_DYNAMICS_HPP
