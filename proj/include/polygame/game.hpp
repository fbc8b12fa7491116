#ifndef POLYGAME_GAME_HPP
#define POLYGAME_GAME_HPP

#include <vector>

#include "polygame/types.hpp"

namespace polygame {

// A poly-matrix game: pairwise payoff blocks A^{ij} of shape |A_i| x |A_j|.
// Diagonal blocks are identically zero (no self-play).  sigma = -1 marks a
// zero-sum game (A^{ji} = -(A^{ij})^T), sigma = +1 a coordination game.
// Immutable after construction; safe to share across concurrent runs.
struct GameSpec {
  int n_agents = 0;
  std::vector<int> action_counts;
  std::vector<std::vector<Mat>> blocks;  // [i][j], dense, zero where absent
  int sigma = -1;

  Layout layout() const { return Layout(action_counts); }
  const Mat& block(int i, int j) const {
    return blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

// All-zero blocks; fill with set_block.
GameSpec make_game(int n_agents, const std::vector<int>& action_counts, int sigma = -1);
// Replaces A^{ij}; throws StructuralError on shape mismatch or i == j.
void set_block(GameSpec& game, int i, int j, const Mat& value);
// Sets A^{ij} and A^{ji} = sigma * (A^{ij})^T in one go.
void set_block_pair(GameSpec& game, int i, int j, const Mat& value);

struct ZeroSumReport {
  // Ordered pairs (i,j) where A^{ji} != -(A^{ij})^T, plus diagonal offenders (i,i).
  std::vector<std::pair<int, int>> violations;
  double max_deviation = 0.0;
  bool valid() const { return violations.empty(); }
};

// Checks A^{ii} == 0 and A^{ji} = -(A^{ij})^T entrywise within 1e-12.
// Dimension inconsistencies throw StructuralError (they are not zero-sum
// violations).
ZeroSumReport validate_zero_sum(const GameSpec& game);

inline constexpr double zero_sum_tol = 1e-12;

// u_i(x) = sum_{j != i} (x^i)^T A^{ij} x^j.
double utility(const GameSpec& game, const StrategyProfile& x, int agent);

// sum_i u_i(x); identically zero on zero-sum games.
double total_utility(const GameSpec& game, const StrategyProfile& x);

// Component i is sum_j A^{ij} x^j, the payoff field driving dy^i/dt.
PayoffProfile aggregate_payoff_field(const GameSpec& game, const StrategyProfile& x);

struct NashCertificate {
  StrategyProfile strategy;
  Vec multipliers;        // lambda^i, one per agent
  double residual = 0.0;  // max violation of sum_j A^{ij} x*^j = lambda^i 1
  bool unique = true;     // false when the equilibrium set is a continuum
  bool valid = true;      // residual and |sum lambda| within the checked tol
};

// Solves the interior stationarity system
//     sum_j A^{ij} x*^j = lambda^i 1,   sum_a x*^i_a = 1,   sum_i lambda^i = 0
// as one dense least-squares problem; underdetermined systems yield the
// minimum-norm representative with unique=false.  Throws SolveError when the
// residual exceeds 1e-8 ("no fully-mixed equilibrium found") or the solution
// touches the boundary ("equilibrium not interior").
NashCertificate solve_fully_mixed_nash(const GameSpec& game);

// Certifies a candidate x: lambda^i = mean of sum_j A^{ij} x^j, residual =
// max deviation from lambda^i 1.  Valid iff residual <= tol and |sum lambda|
// <= tol.  Throws DomainError when x is not fully mixed.
NashCertificate verify_nash(const GameSpec& game, const StrategyProfile& x, double tol);

}  // namespace polygame

#endif  // POLYGAME_GAME_HPP
