#include "polygame/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace polygame {

Method method_from_string(const std::string& name) {
  if (name == "rk4") return Method::Rk4;
  if (name == "rk45") return Method::Rk45;
  throw ConfigError("integrator.method", "unknown method '" + name + "' (expected rk4|rk45)");
}

std::string to_string(Method method) { return method == Method::Rk4 ? "rk4" : "rk45"; }

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("integrator.dt", "must be positive");
  if (!(cfg.horizon > 0.0)) throw ConfigError("integrator.T", "must be positive");
  if (cfg.dt > cfg.horizon) throw ConfigError("integrator.dt", "must not exceed the horizon T");
  if (cfg.record_stride < 1) throw ConfigError("integrator.stride", "must be a positive integer");
  if (!(cfg.rel_tol > 0.0)) throw ConfigError("integrator.rel_tol", "must be positive");
  if (!(cfg.abs_tol > 0.0)) throw ConfigError("integrator.abs_tol", "must be positive");
}

PayoffProfile init_dual_state(const std::vector<RegularizerSpec>& regs, const StrategyProfile& x0) {
  if (regs.size() != x0.size()) throw StructuralError("init_dual_state: need one regularizer per agent");
  if (!is_fully_mixed(x0)) throw DomainError("init_dual_state: x0 must be fully mixed");
  PayoffProfile y0;
  y0.reserve(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) y0.push_back(primal_gradient(regs[i], x0[i]));
  return y0;
}

namespace {

Vec eval_field(const VectorField& field, double t, const Vec& y) {
  try {
    return field(t, y);
  } catch (const DomainError& err) {
    throw IntegrationError(err.what(), t);
  } catch (const SolveError& err) {
    throw IntegrationError(err.what(), t);
  }
}

Vec rk4_step(const VectorField& field, double t, const Vec& y, double h) {
  const Vec k1 = eval_field(field, t, y);
  const Vec k2 = eval_field(field, t + 0.5 * h, y + 0.5 * h * k1);
  const Vec k3 = eval_field(field, t + 0.5 * h, y + 0.5 * h * k2);
  const Vec k4 = eval_field(field, t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

OdePath rk4_path(const VectorField& field, const Vec& y0, const IntegratorConfig& cfg) {
  validate(cfg);
  const long n_full = static_cast<long>(std::floor(cfg.horizon / cfg.dt + 1e-9));
  const double remainder = cfg.horizon - static_cast<double>(n_full) * cfg.dt;
  const bool partial = remainder > 1e-12 * std::max(1.0, cfg.horizon);
  const long n_steps = n_full + (partial ? 1 : 0);

  OdePath path;
  path.times.push_back(0.0);
  path.states.push_back(y0);

  Vec y = y0;
  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const double h = (partial && k == n_full) ? remainder : cfg.dt;
    y = rk4_step(field, t, y, h);
    const bool last = k + 1 == n_steps;
    if ((k + 1) % cfg.record_stride == 0 || last) {
      path.times.push_back(last ? cfg.horizon : static_cast<double>(k + 1) * cfg.dt);
      path.states.push_back(y);
    }
  }
  return path;
}

OdePath rk45_path(const VectorField& field, const Vec& y0, const IntegratorConfig& cfg) {
  validate(cfg);

  // Dormand-Prince 5(4) tableau.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  OdePath path;
  path.times.push_back(0.0);
  path.states.push_back(y0);

  Vec y = y0;
  double t = 0.0;
  double h = cfg.dt;
  long accepted = 0;

  while (t < cfg.horizon) {
    h = std::min(h, cfg.horizon - t);
    if (h < 1e-12) throw IntegrationError("rk45 step size underflow (stiff problem?)", t);

    const Vec k1 = eval_field(field, t, y);
    const Vec k2 = eval_field(field, t + c2 * h, y + h * (a21 * k1));
    const Vec k3 = eval_field(field, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = eval_field(field, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = eval_field(field, t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 =
        eval_field(field, t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = eval_field(field, t + h, y_new);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = err[i] / scale;
      norm += r * r;
    }
    norm = std::sqrt(norm / static_cast<double>(y.size()));

    if (norm <= 1.0) {
      t = (cfg.horizon - t - h < 1e-12) ? cfg.horizon : t + h;
      y = y_new;
      ++accepted;
      if (accepted % cfg.record_stride == 0 || t >= cfg.horizon) {
        path.times.push_back(t);
        path.states.push_back(y);
      }
    }
    double factor = 0.2;  // non-finite error norms force the strongest shrink
    if (norm == 0.0)
      factor = 5.0;
    else if (std::isfinite(norm))
      factor = std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return path;
}

Trajectory integrate(const FlowSystem& sys, const PayoffProfile& y0, const IntegratorConfig& cfg) {
  const Layout layout = sys.game.layout();
  const VectorField field = [&sys, &layout](double, const Vec& stacked) {
    return layout.pack(flow_field(sys, layout.unpack(stacked)));
  };

  const OdePath path = cfg.method == Method::Rk4 ? rk4_path(field, layout.pack(y0), cfg)
                                                 : rk45_path(field, layout.pack(y0), cfg);

  Trajectory traj;
  traj.times = path.times;
  traj.y_states.reserve(path.states.size());
  traj.x_states.reserve(path.states.size());
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    PayoffProfile y = layout.unpack(path.states[k]);
    try {
      traj.x_states.push_back(mirror_map(sys.regs, y));
    } catch (const DomainError& err) {
      throw IntegrationError(err.what(), path.times[k]);
    }
    traj.y_states.push_back(std::move(y));
  }
  return traj;
}

}  // namespace polygame
