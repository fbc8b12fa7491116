// Test-only oracles: independent brute-force evaluators kept deliberately
// separate from the library's code paths.
#ifndef POLYGAME_TESTS_ORACLES_HPP
#define POLYGAME_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "polygame/game.hpp"
#include "polygame/regularizer.hpp"

namespace oracles {

using polygame::GameSpec;
using polygame::Mat;
using polygame::PayoffProfile;
using polygame::StrategyProfile;
using polygame::Vec;

// sum_{j != i} sum_{a,b} x^i_a A^{ij}_{ab} x^j_b, written as plain loops.
inline double utility(const GameSpec& game, const StrategyProfile& x, int agent) {
  double u = 0.0;
  for (int j = 0; j < game.n_agents; ++j) {
    if (j == agent) continue;
    const Mat& block = game.block(agent, j);
    for (Eigen::Index a = 0; a < block.rows(); ++a)
      for (Eigen::Index b = 0; b < block.cols(); ++b)
        u += x[static_cast<std::size_t>(agent)][a] * block(a, b) * x[static_cast<std::size_t>(j)][b];
  }
  return u;
}

// v^i_a = sum_j sum_b A^{ij}_{ab} x^j_b.
inline PayoffProfile aggregate_field(const GameSpec& game, const StrategyProfile& x) {
  PayoffProfile out;
  for (int i = 0; i < game.n_agents; ++i) {
    Vec v = Vec::Zero(game.action_counts[static_cast<std::size_t>(i)]);
    for (int j = 0; j < game.n_agents; ++j) {
      const Mat& block = game.block(i, j);
      for (Eigen::Index a = 0; a < block.rows(); ++a)
        for (Eigen::Index b = 0; b < block.cols(); ++b)
          v[a] += block(a, b) * x[static_cast<std::size_t>(j)][b];
    }
    out.push_back(v);
  }
  return out;
}

// sum_{i,j} < grad h*^j(y^j), A^{ji} x^i > with explicit index sums.
inline double hamiltonian(const GameSpec& game, const std::vector<polygame::RegularizerSpec>& regs,
                          const StrategyProfile& x, const PayoffProfile& y) {
  double value = 0.0;
  for (int j = 0; j < game.n_agents; ++j) {
    const Vec grad = polygame::mirror_map(regs[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(j)]);
    for (int i = 0; i < game.n_agents; ++i) {
      const Mat& block = game.block(j, i);
      for (Eigen::Index a = 0; a < block.rows(); ++a)
        for (Eigen::Index b = 0; b < block.cols(); ++b)
          value += grad[a] * block(a, b) * x[static_cast<std::size_t>(i)][b];
    }
  }
  return value;
}

// The (4m+1)-power perturbation by explicit enumeration of the agent-index
// paths (j1, ..., j_{4m+2}), each path contributing
//   A^{i j1} H_{j1} A^{j1 j2} ... H_{j_{4m+1}} A^{j_{4m+1} j_{4m+2}} x^{j_{4m+2}}.
inline Vec perturbation_paths(const GameSpec& game, const std::vector<Mat>& hess,
                              const StrategyProfile& x, int agent, int m) {
  const int chain = 4 * m + 1;  // number of Hessian factors on each path
  Vec total = Vec::Zero(game.action_counts[static_cast<std::size_t>(agent)]);
  std::vector<int> path(static_cast<std::size_t>(chain + 1));
  const std::function<void(int)> recurse = [&](int depth) {
    if (depth == chain + 1) {
      // Evaluate right-to-left: x at the tail, then alternate A and H.
      Vec v = x[static_cast<std::size_t>(path[static_cast<std::size_t>(chain)])];
      for (int k = chain; k >= 1; --k) {
        const int from = path[static_cast<std::size_t>(k - 1)];
        const int to = path[static_cast<std::size_t>(k)];
        v = game.block(from, to) * v;
        v = hess[static_cast<std::size_t>(from)] * v;
      }
      total += game.block(agent, path[0]) * v;
      return;
    }
    for (int j = 0; j < game.n_agents; ++j) {
      path[static_cast<std::size_t>(depth)] = j;
      recurse(depth + 1);
    }
  };
  recurse(0);
  return total;
}

// Central finite differences of a scalar function of a vector.
template <typename F>
Vec fd_gradient(const F& f, const Vec& y, double h) {
  Vec g(y.size());
  for (Eigen::Index a = 0; a < y.size(); ++a) {
    Vec yp = y, ym = y;
    yp[a] += h;
    ym[a] -= h;
    g[a] = (f(yp) - f(ym)) / (2 * h);
  }
  return g;
}

// Central finite differences of a vector function of a vector (columns).
template <typename F>
Mat fd_jacobian(const F& f, const Vec& y, double h) {
  const Vec probe = f(y);
  Mat jac(probe.size(), y.size());
  for (Eigen::Index a = 0; a < y.size(); ++a) {
    Vec yp = y, ym = y;
    yp[a] += h;
    ym[a] -= h;
    jac.col(a) = (f(yp) - f(ym)) / (2 * h);
  }
  return jac;
}

}  // namespace oracles

#endif  // POLYGAME_TESTS_ORACLES_HPP
