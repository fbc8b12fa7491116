#ifndef POLYGAME_OBSERVE_HPP
#define POLYGAME_OBSERVE_HPP

#include <string>
#include <vector>

#include "polygame/dynamics.hpp"
#include "polygame/integrate.hpp"

namespace polygame {

// Where "distance to equilibrium" is measured from: a single verified
// fully-mixed Nash point, or an equilibrium continuum parametrized as a line
// in the stacked strategy space (Matching Pennies: base + p * direction).
enum class RefMode { FixedPoint, ProjectionOntoLine };

struct EquilibriumReference {
  RefMode mode = RefMode::FixedPoint;
  StrategyProfile fixed_point;  // FixedPoint mode
  Vec line_base;                // ProjectionOntoLine mode, stacked
  Vec line_direction;           // ProjectionOntoLine mode, stacked
};

EquilibriumReference fixed_point_reference(StrategyProfile x_star);
EquilibriumReference line_reference(Vec base, Vec direction);

// Resolves a reference to the fixed point used by the Fenchel coupling: a
// FixedPoint is returned as-is; a line reference is collapsed to the
// orthogonal projection of x_anchor onto the line, clamped to the fully-mixed
// parameter range.  The result is the fixed equilibrium that dissipation is
// measured against.
StrategyProfile resolve_reference_point(const EquilibriumReference& ref, const GameSpec& game,
                                        const StrategyProfile& x_anchor);

// H_FTRL(x, y) = sum_{i,j} < grad h*^j(y^j), A^{ji} x^i >.  The x argument is
// independent of y; with x = mirror_map(y) this equals the total utility, so
// it vanishes identically on zero-sum games.
double hamiltonian(const FlowSystem& sys, const StrategyProfile& x, const PayoffProfile& y);

// G_S^i = sum_a x^i_a, the per-agent conserved simplex sums.
std::vector<double> simplex_sums(const StrategyProfile& x);

// Fenchel coupling against a fully-mixed reference x*:
//   G_F(y) = sum_i ( h^i(x*^i) + h*^i(y^i) - <y^i, x*^i> ).
// Nonnegative by Fenchel-Young; zero iff mirror_map(y) = x*.  The constant
// h^i(x*^i) term is kept so that the zero really is attained.
double fenchel_coupling(const FlowSystem& sys, const StrategyProfile& x_star, const PayoffProfile& y);
double fenchel_coupling(const FlowSystem& sys, const EquilibriumReference& ref, const PayoffProfile& y);

// FixedPoint: Euclidean norm of the stacked difference x - x*.
// ProjectionOntoLine: residual norm after orthogonal projection onto the line.
double distance_to_reference(const EquilibriumReference& ref, const StrategyProfile& x);

// Observables evaluated along trajectories.  CSV/series names: "energy",
// "gs_<agent>", "fenchel", "dist", "utility_<agent>" (agents 1-based).
enum class Observable { Energy, SimplexSum, Fenchel, Distance, Utility };

struct ObservableSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;
};

// Pointwise evaluation at every recorded time.  agent is required for
// SimplexSum and Utility (0-based index), ignored otherwise.
ObservableSeries series(const Trajectory& traj, Observable kind, const FlowSystem& sys,
                        const EquilibriumReference& ref, int agent = -1);

// The full bundle emitted by experiment runs: energy, per-agent simplex sums,
// fenchel, dist, per-agent utilities.
std::vector<ObservableSeries> standard_series(const Trajectory& traj, const FlowSystem& sys,
                                              const EquilibriumReference& ref);

}  // namespace polygame

#endif  // POLYGAME_OBSERVE_HPP
