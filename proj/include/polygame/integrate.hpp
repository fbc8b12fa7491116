#ifndef POLYGAME_INTEGRATE_HPP
#define POLYGAME_INTEGRATE_HPP

#include <functional>
#include <vector>

#include "polygame/dynamics.hpp"
#include "polygame/types.hpp"

namespace polygame {

enum class Method { Rk4, Rk45 };

Method method_from_string(const std::string& name);
std::string to_string(Method method);

struct IntegratorConfig {
  Method method = Method::Rk4;
  double dt = 0.01;        // fixed step (Rk4) or initial step (Rk45)
  double horizon = 100.0;  // T
  int record_stride = 10;  // record every this many (accepted) steps
  double rel_tol = 1e-9;   // Rk45 only
  double abs_tol = 1e-12;  // Rk45 only
};

void validate(const IntegratorConfig& cfg);

// Time-stamped states; t=0 and t=T are always recorded.
struct Trajectory {
  std::vector<double> times;
  std::vector<PayoffProfile> y_states;
  std::vector<StrategyProfile> x_states;  // mirror images at record times

  std::size_t size() const { return times.size(); }
};

// Dual initial state with mirror_map(result) = x0, using the canonical
// primal_gradient representative per agent.  x0 must be fully mixed.
PayoffProfile init_dual_state(const std::vector<RegularizerSpec>& regs, const StrategyProfile& x0);

// Low-level drivers on stacked vectors, reusable for scalar test problems.
using VectorField = std::function<Vec(double, const Vec&)>;

struct OdePath {
  std::vector<double> times;
  std::vector<Vec> states;
};

// Classic fixed-step RK4.  A trailing partial step covers horizons that are
// not integer multiples of dt.  Field failures surface as IntegrationError
// carrying the step's start time.
OdePath rk4_path(const VectorField& field, const Vec& y0, const IntegratorConfig& cfg);

// Adaptive Dormand-Prince RK45 with the usual mixed abs/rel error control.
// Step underflow below 1e-12 raises IntegrationError (stiffness).
OdePath rk45_path(const VectorField& field, const Vec& y0, const IntegratorConfig& cfg);

// Integrates the system's active flow field from y0.  Deterministic:
// identical inputs yield bit-identical trajectories.
Trajectory integrate(const FlowSystem& sys, const PayoffProfile& y0, const IntegratorConfig& cfg);

}  // namespace polygame

#endif  // POLYGAME_INTEGRATE_HPP
