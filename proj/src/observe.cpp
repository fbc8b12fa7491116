#include "polygame/observe.hpp"

#include <algorithm>
#include <cmath>

namespace polygame {

EquilibriumReference fixed_point_reference(StrategyProfile x_star) {
  EquilibriumReference ref;
  ref.mode = RefMode::FixedPoint;
  ref.fixed_point = std::move(x_star);
  return ref;
}

EquilibriumReference line_reference(Vec base, Vec direction) {
  if (base.size() != direction.size())
    throw StructuralError("line_reference: base and direction dims differ");
  if (direction.squaredNorm() == 0.0) throw StructuralError("line_reference: zero direction");
  EquilibriumReference ref;
  ref.mode = RefMode::ProjectionOntoLine;
  ref.line_base = std::move(base);
  ref.line_direction = std::move(direction);
  return ref;
}

StrategyProfile resolve_reference_point(const EquilibriumReference& ref, const GameSpec& game,
                                        const StrategyProfile& x_anchor) {
  if (ref.mode == RefMode::FixedPoint) return ref.fixed_point;
  const Layout layout = game.layout();
  const Vec stacked = layout.pack(x_anchor);
  if (stacked.size() != ref.line_base.size())
    throw StructuralError("resolve_reference_point: anchor dim does not match the line");
  double p = (stacked - ref.line_base).dot(ref.line_direction) / ref.line_direction.squaredNorm();
  p = std::clamp(p, interior_eps, 1.0 - interior_eps);
  return layout.unpack(ref.line_base + p * ref.line_direction);
}

double hamiltonian(const FlowSystem& sys, const StrategyProfile& x, const PayoffProfile& y) {
  if (static_cast<int>(x.size()) != sys.game.n_agents)
    throw StructuralError("hamiltonian: profile has wrong agent count");
  for (int i = 0; i < sys.game.n_agents; ++i)
    if (x[static_cast<std::size_t>(i)].size() != sys.game.action_counts[static_cast<std::size_t>(i)])
      throw StructuralError("hamiltonian: agent " + std::to_string(i) + " vector has wrong length");
  const StrategyProfile gradients = mirror_map(sys.regs, y);
  double value = 0.0;
  for (int j = 0; j < sys.game.n_agents; ++j)
    for (int i = 0; i < sys.game.n_agents; ++i)
      value += gradients[static_cast<std::size_t>(j)].dot(sys.game.block(j, i) *
                                                          x[static_cast<std::size_t>(i)]);
  return value;
}

std::vector<double> simplex_sums(const StrategyProfile& x) {
  std::vector<double> sums;
  sums.reserve(x.size());
  for (const Vec& xi : x) sums.push_back(xi.sum());
  return sums;
}

double fenchel_coupling(const FlowSystem& sys, const StrategyProfile& x_star, const PayoffProfile& y) {
  if (x_star.size() != y.size())
    throw StructuralError("fenchel_coupling: reference and state have different agent counts");
  if (!is_fully_mixed(x_star)) throw DomainError("fenchel_coupling: reference must be fully mixed");
  double value = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    value += primal_value(sys.regs[i], x_star[i]) + dual_value(sys.regs[i], y[i]) - y[i].dot(x_star[i]);
  }
  return value;
}

double fenchel_coupling(const FlowSystem& sys, const EquilibriumReference& ref, const PayoffProfile& y) {
  if (ref.mode != RefMode::FixedPoint)
    throw StructuralError("fenchel_coupling: reference must be a fixed point (resolve the line first)");
  return fenchel_coupling(sys, ref.fixed_point, y);
}

double distance_to_reference(const EquilibriumReference& ref, const StrategyProfile& x) {
  std::vector<int> sizes;
  sizes.reserve(x.size());
  for (const Vec& xi : x) sizes.push_back(static_cast<int>(xi.size()));
  const Vec stacked = Layout(sizes).pack(x);

  if (ref.mode == RefMode::FixedPoint) {
    if (ref.fixed_point.size() != x.size())
      throw StructuralError("distance_to_reference: reference has wrong agent count");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (ref.fixed_point[i].size() != x[i].size())
        throw StructuralError("distance_to_reference: reference dims do not match the profile");
    const Vec target = Layout(sizes).pack(ref.fixed_point);
    return (stacked - target).norm();
  }
  const Vec offset = stacked - ref.line_base;
  const double p = offset.dot(ref.line_direction) / ref.line_direction.squaredNorm();
  return (offset - p * ref.line_direction).norm();
}

ObservableSeries series(const Trajectory& traj, Observable kind, const FlowSystem& sys,
                        const EquilibriumReference& ref, int agent) {
  if (traj.size() == 0) throw StructuralError("series: empty trajectory");
  ObservableSeries out;
  out.times = traj.times;
  out.values.reserve(traj.size());

  switch (kind) {
    case Observable::Energy:
      out.name = "energy";
      for (std::size_t k = 0; k < traj.size(); ++k)
        out.values.push_back(hamiltonian(sys, traj.x_states[k], traj.y_states[k]));
      break;
    case Observable::SimplexSum:
      out.name = "gs_" + std::to_string(agent + 1);
      for (std::size_t k = 0; k < traj.size(); ++k)
        out.values.push_back(traj.x_states[k][static_cast<std::size_t>(agent)].sum());
      break;
    case Observable::Fenchel: {
      out.name = "fenchel";
      const StrategyProfile x_star = resolve_reference_point(ref, sys.game, traj.x_states.front());
      for (std::size_t k = 0; k < traj.size(); ++k)
        out.values.push_back(fenchel_coupling(sys, x_star, traj.y_states[k]));
      break;
    }
    case Observable::Distance:
      out.name = "dist";
      for (std::size_t k = 0; k < traj.size(); ++k)
        out.values.push_back(distance_to_reference(ref, traj.x_states[k]));
      break;
    case Observable::Utility:
      out.name = "utility_" + std::to_string(agent + 1);
      for (std::size_t k = 0; k < traj.size(); ++k)
        out.values.push_back(utility(sys.game, traj.x_states[k], agent));
      break;
  }
  return out;
}

std::vector<ObservableSeries> standard_series(const Trajectory& traj, const FlowSystem& sys,
                                              const EquilibriumReference& ref) {
  std::vector<ObservableSeries> all;
  all.push_back(series(traj, Observable::Energy, sys, ref));
  for (int i = 0; i < sys.game.n_agents; ++i)
    all.push_back(series(traj, Observable::SimplexSum, sys, ref, i));
  all.push_back(series(traj, Observable::Fenchel, sys, ref));
  all.push_back(series(traj, Observable::Distance, sys, ref));
  for (int i = 0; i < sys.game.n_agents; ++i)
    all.push_back(series(traj, Observable::Utility, sys, ref, i));
  return all;
}

}  // namespace polygame
