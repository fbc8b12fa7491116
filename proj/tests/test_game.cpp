#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polygame/catalog.hpp"
#include "polygame/game.hpp"
#include "polygame/rng.hpp"

using namespace polygame;

namespace {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

StrategyProfile random_profile(Xoshiro256pp& rng, const GameSpec& game) {
  StrategyProfile x;
  for (int c : game.action_counts) {
    Vec xi(c);
    for (int a = 0; a < c; ++a) xi[a] = rng.uniform(0.05, 1.0);
    x.push_back(xi / xi.sum());
  }
  return x;
}

}  // namespace

TEST_CASE("zero-sum validation accepts the catalog games") {
  CHECK(validate_zero_sum(weighted_rps(1, 1, 1)).valid());
  CHECK(validate_zero_sum(matching_pennies_3(1.0)).valid());
}

TEST_CASE("zero-sum validation flags a sign flip") {
  GameSpec game = weighted_rps(1, 1, 1);
  // break the pair: A^{21} = +(A^{12})^T
  game.blocks[1][0] = game.block(0, 1).transpose();
  const ZeroSumReport report = validate_zero_sum(game);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == std::pair<int, int>(1, 0));
  CHECK(report.max_deviation > 1.0);
}

TEST_CASE("dimension mismatch is a structural error, not a zero-sum violation") {
  GameSpec game = weighted_rps(1, 1, 1);
  game.blocks[0][1] = Mat::Zero(3, 2);
  CHECK_THROWS_AS(validate_zero_sum(game), StructuralError);
}

TEST_CASE("diagonal blocks must vanish") {
  GameSpec game = weighted_rps(1, 1, 1);
  game.blocks[0][0] = Mat::Identity(3, 3);
  const ZeroSumReport report = validate_zero_sum(game);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == std::pair<int, int>(0, 0));
}

TEST_CASE("utility on known points") {
  const GameSpec rps = weighted_rps(1, 1, 1);
  const Vec uniform = Vec::Constant(3, 1.0 / 3);
  CHECK(std::abs(utility(rps, {uniform, uniform}, 0)) <= 1e-15);

  // pure rock vs pure paper in the weighted game reads off -a
  const GameSpec wrps = weighted_rps(1, 2, 3);
  CHECK(utility(wrps, {make_vec({1, 0, 0}), make_vec({0, 1, 0})}, 0) == doctest::Approx(-1.0));

  // at equilibrium the utility equals the Nash multiplier
  const NashCertificate cert = solve_fully_mixed_nash(wrps);
  for (int i = 0; i < 2; ++i)
    CHECK(utility(wrps, cert.strategy, i) == doctest::Approx(cert.multipliers[i]).epsilon(1e-10));

  CHECK_THROWS_AS(utility(rps, {uniform, uniform}, 2), StructuralError);
}

TEST_CASE("utility agrees with the loop-nest oracle") {
  Xoshiro256pp rng(21);
  const GameSpec game = random_zero_sum(3, 3, {3, 2, 4}, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const StrategyProfile x = random_profile(rng, game);
    for (int i = 0; i < 3; ++i)
      CHECK(utility(game, x, i) == doctest::Approx(oracles::utility(game, x, i)).epsilon(1e-14));
  }
}

TEST_CASE("total utility vanishes on zero-sum games") {
  Xoshiro256pp rng(22);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GameSpec game = random_zero_sum(seed, 2, {4, 3}, 2.0);
    for (int trial = 0; trial < 10; ++trial)
      CHECK(std::abs(total_utility(game, random_profile(rng, game))) <= 1e-10);
  }

  const GameSpec solo = make_game(1, {2}, -1);
  CHECK(total_utility(solo, {make_vec({0.4, 0.6})}) == 0.0);
}

TEST_CASE("coordination games have nonzero circulating utility") {
  GameSpec game = make_game(2, {2, 2}, +1);
  Mat block(2, 2);
  block << 1, 0,
           0, 2;
  set_block_pair(game, 0, 1, block);  // A^{21} = +(A^{12})^T
  const StrategyProfile x = {make_vec({0.5, 0.5}), make_vec({0.5, 0.5})};
  const double total = total_utility(game, x);
  CHECK(total == doctest::Approx(oracles::utility(game, x, 0) + oracles::utility(game, x, 1)));
  CHECK(std::abs(total) > 0.1);
}

TEST_CASE("aggregate payoff field") {
  const GameSpec rps = weighted_rps(1, 1, 1);
  const Vec uniform = Vec::Constant(3, 1.0 / 3);
  const PayoffProfile at_uniform = aggregate_payoff_field(rps, {uniform, uniform});
  CHECK(at_uniform[0].cwiseAbs().maxCoeff() <= 1e-15);

  // opponent at the weighted Nash makes the field a constant vector
  const GameSpec wrps = weighted_rps(1, 2, 3);
  const StrategyProfile nash = weighted_rps_nash(1, 2, 3);
  const PayoffProfile at_nash = aggregate_payoff_field(wrps, nash);
  for (const Vec& v : at_nash) CHECK((v.array() - v.mean()).abs().maxCoeff() <= 1e-15);

  const GameSpec mp = matching_pennies_3(1.0);
  const Vec half = make_vec({0.5, 0.5});
  const PayoffProfile at_center = aggregate_payoff_field(mp, {half, half, half});
  const PayoffProfile expected = oracles::aggregate_field(mp, {half, half, half});
  for (int i = 0; i < 3; ++i) {
    CHECK((at_center[static_cast<std::size_t>(i)] - expected[static_cast<std::size_t>(i)])
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
    CHECK(at_center[static_cast<std::size_t>(i)].cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("nash solve reproduces the closed forms") {
  const NashCertificate wrps = solve_fully_mixed_nash(weighted_rps(1, 2, 3));
  const StrategyProfile expected = weighted_rps_nash(1, 2, 3);
  for (int i = 0; i < 2; ++i)
    CHECK((wrps.strategy[static_cast<std::size_t>(i)] - expected[static_cast<std::size_t>(i)])
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  CHECK(wrps.multipliers.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(wrps.unique);

  const NashCertificate rps = solve_fully_mixed_nash(weighted_rps(1, 1, 1));
  for (const Vec& xi : rps.strategy)
    CHECK((xi.array() - 1.0 / 3).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("nash solve flags the Matching Pennies continuum and picks p=1/2") {
  const NashCertificate cert = solve_fully_mixed_nash(matching_pennies_3(1.0));
  CHECK_FALSE(cert.unique);
  for (const Vec& xi : cert.strategy) {
    CHECK(xi[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(xi[1] == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("nash solve reports inconsistent and boundary systems") {
  // dominant row: stationarity has no solution on the simplex
  GameSpec dominated = make_game(2, {2, 2}, -1);
  Mat block(2, 2);
  block << 1, 1,
           0, 0;
  set_block_pair(dominated, 0, 1, block);
  CHECK_THROWS_AS(solve_fully_mixed_nash(dominated), SolveError);

  // consistent linear system whose solution leaves the simplex interior
  GameSpec boundary = make_game(2, {2, 2}, -1);
  Mat skewed(2, 2);
  skewed << 0, 1,
            0, 2;
  set_block_pair(boundary, 0, 1, skewed);
  CHECK_THROWS_AS(solve_fully_mixed_nash(boundary), SolveError);
}

TEST_CASE("verify_nash certifies and rejects") {
  const GameSpec rps = weighted_rps(1, 1, 1);
  const Vec uniform = Vec::Constant(3, 1.0 / 3);
  const NashCertificate at_uniform = verify_nash(rps, {uniform, uniform}, 1e-10);
  CHECK(at_uniform.valid);
  CHECK(at_uniform.multipliers.cwiseAbs().maxCoeff() <= 1e-15);

  const GameSpec mp = matching_pennies_3(1.0);
  const Vec p3 = make_vec({0.3, 0.7});
  CHECK(verify_nash(mp, {p3, p3, p3}, 1e-10).valid);

  // tangent perturbation of the weighted equilibrium fails at tol 1e-6
  StrategyProfile perturbed = weighted_rps_nash(1, 2, 3);
  const Vec tangent = make_vec({1.0, -1.0, 0.0}) / std::sqrt(2.0);
  for (Vec& xi : perturbed) xi += 0.01 * tangent;
  const NashCertificate off = verify_nash(weighted_rps(1, 2, 3), perturbed, 1e-6);
  CHECK_FALSE(off.valid);
  CHECK(off.residual > 1e-6);

  CHECK_THROWS_AS(verify_nash(rps, {make_vec({1.0, 0.0, 0.0}), uniform}, 1e-10), DomainError);
}

TEST_CASE("multiplier sums stay within n*tol for certified equilibria") {
  for (const GameSpec& game : {weighted_rps(1, 1, 1), weighted_rps(1, 2, 3), matching_pennies_3(1.0)}) {
    const NashCertificate cert = solve_fully_mixed_nash(game);
    const NashCertificate check = verify_nash(game, cert.strategy, 1e-8);
    CHECK(check.residual <= 1e-8);
    CHECK(std::abs(check.multipliers.sum()) <= game.n_agents * 1e-8);
  }
}

TEST_CASE("grid search finds no profitable deviation from solved equilibria") {
  // Fully-mixed equilibria need square support, so only square draws are
  // scanned; most seeds land on boundary equilibria and are skipped.
  std::vector<GameSpec> games;
  for (std::uint64_t seed = 1; seed <= 20 && games.size() < 2; ++seed)
    games.push_back(random_zero_sum(seed, 2, {3, 3}, 1.0));
  games.push_back(random_zero_sum(6, 2, {4, 4}, 1.0));

  int scanned = 0;
  for (const GameSpec& game : games) {
    NashCertificate cert;
    try {
      cert = solve_fully_mixed_nash(game);
    } catch (const SolveError&) {
      continue;
    }
    ++scanned;
    const int resolution = 50;
    for (int agent = 0; agent < 2; ++agent) {
      const double base = utility(game, cert.strategy, agent);
      double best_gain = 0.0;
      const int dim = game.action_counts[static_cast<std::size_t>(agent)];
      std::function<void(int, int, Vec&)> scan = [&](int coord, int left, Vec& z) {
        if (coord == dim - 1) {
          z[coord] = static_cast<double>(left) / resolution;
          StrategyProfile x = cert.strategy;
          x[static_cast<std::size_t>(agent)] = z;
          best_gain = std::max(best_gain, utility(game, x, agent) - base);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          z[coord] = static_cast<double>(k) / resolution;
          scan(coord + 1, left - k, z);
        }
      };
      Vec z(dim);
      scan(0, resolution, z);
      CHECK(best_gain <= 1e-2);
    }
  }
  CHECK(scanned >= 1);
}
