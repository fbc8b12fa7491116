#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "polygame/catalog.hpp"

using namespace polygame;

TEST_CASE("weighted RPS blocks match the defining matrix") {
  const GameSpec game = weighted_rps(1, 2, 3);
  Mat expected(3, 3);
  expected << 0, -1, 2,
              1, 0, -3,
             -2, 3, 0;
  CHECK((game.block(0, 1) - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((game.block(1, 0) + expected.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(validate_zero_sum(game).valid());
}

TEST_CASE("weighted RPS closed-form equilibrium") {
  const StrategyProfile uniform = weighted_rps_nash(1, 1, 1);
  CHECK((uniform[0].array() - 1.0 / 3).abs().maxCoeff() <= 1e-16);

  const StrategyProfile nash = weighted_rps_nash(1, 2, 3);
  CHECK(nash[0][0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(nash[0][1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(nash[0][2] == doctest::Approx(1.0 / 6).epsilon(1e-15));

  const NashCertificate cert = verify_nash(weighted_rps(1, 2, 3), nash, 1e-12);
  CHECK(cert.valid);
  CHECK(cert.residual <= 1e-12);

  CHECK_THROWS_AS(weighted_rps_nash(1, -2, 3), DomainError);
}

TEST_CASE("three-player Matching Pennies structure") {
  const GameSpec game = matching_pennies_3(1.0);
  Mat expected(2, 2);
  expected << 1, -1,
             -1, 1;
  CHECK((game.block(0, 1) - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((game.block(1, 2) - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((game.block(2, 0) - expected).cwiseAbs().maxCoeff() == 0.0);
  // the implicit blocks are the zero-sum reflections
  CHECK((game.block(1, 0) + expected.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((game.block(2, 1) + expected.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((game.block(0, 2) + expected.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(validate_zero_sum(game).valid());

  Vec half(2);
  half << 0.5, 0.5;
  const StrategyProfile center = {half, half, half};
  CHECK(verify_nash(game, center, 1e-12).valid);
  for (const Vec& v : oracles::aggregate_field(game, center))
    CHECK(v.cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("matching pennies equilibrium line") {
  const EquilibriumReference line = matching_pennies_line();
  const GameSpec game = matching_pennies_3(1.0);
  for (double p : {0.2, 0.5, 0.8}) {
    const StrategyProfile on_line = game.layout().unpack(line.line_base + p * line.line_direction);
    CHECK(verify_nash(game, on_line, 1e-12).valid);
  }
}

TEST_CASE("random zero-sum games are reproducible and valid") {
  const GameSpec a = random_zero_sum(17, 3, {3, 2, 4}, 2.0);
  const GameSpec b = random_zero_sum(17, 3, {3, 2, 4}, 2.0);
  const GameSpec c = random_zero_sum(18, 3, {3, 2, 4}, 2.0);
  CHECK(validate_zero_sum(a).valid());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK((a.block(i, j) - b.block(i, j)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.block(0, 1) - c.block(0, 1)).cwiseAbs().maxCoeff() > 0.0);
  CHECK(a.block(0, 1).cwiseAbs().maxCoeff() <= 2.0);
}

TEST_CASE("presets are fully populated and certified") {
  for (const std::string& name : preset_names()) {
    const PresetExperiment exp = preset(name);
    CHECK(exp.name == name);
    CHECK(validate_zero_sum(exp.game).valid());
    CHECK(static_cast<int>(exp.regs.size()) == exp.game.n_agents);
    CHECK(is_fully_mixed(exp.x0));
    for (const Vec& xi : exp.x0) CHECK(std::abs(xi.sum() - 1.0) <= 1e-12);
    CHECK(exp.params.alpha >= 0.0);
    CHECK(exp.integrator.dt == 0.01);
    CHECK(exp.integrator.record_stride == 10);

    if (exp.reference.mode == RefMode::FixedPoint) {
      CHECK(verify_nash(exp.game, exp.reference.fixed_point, 1e-10).valid);
    } else {
      const StrategyProfile resolved = resolve_reference_point(exp.reference, exp.game, exp.x0);
      CHECK(verify_nash(exp.game, resolved, 1e-10).valid);
    }
  }
}

TEST_CASE("preset parameters are pinned") {
  const PresetExperiment rps = preset("rps");
  CHECK(rps.regs[0].kind == RegKind::Entropic);
  CHECK(rps.x0[0][0] == doctest::Approx(0.1));
  CHECK(rps.x0[0][2] == doctest::Approx(0.8));
  CHECK(rps.studied_alphas == std::vector<double>{0.0, 0.15});

  const PresetExperiment wrps = preset("wrps");
  CHECK(wrps.x0[1][1] == doctest::Approx(0.6));
  CHECK(wrps.studied_alphas == std::vector<double>{0.0, 0.05, 0.15});

  const PresetExperiment mp3 = preset("mp3");
  CHECK(mp3.studied_alphas == std::vector<double>{0.0, 0.1});
  CHECK(mp3.reference.mode == RefMode::ProjectionOntoLine);
  // pinned seed-42 initial condition
  CHECK(mp3.x0[0][0] == doctest::Approx(0.68858308707374588).epsilon(1e-15));
  CHECK(mp3.x0[1][0] == doctest::Approx(0.39129262403699671).epsilon(1e-15));
  CHECK(mp3.x0[2][0] == doctest::Approx(0.79033650090649334).epsilon(1e-15));

  const PresetExperiment euclid = preset("mp3-euclid");
  CHECK(euclid.regs[0].kind == RegKind::Euclidean);
  CHECK(euclid.studied_alphas == std::vector<double>{0.0, 0.05, 0.1});
  for (int i = 0; i < 3; ++i)
    CHECK((euclid.x0[static_cast<std::size_t>(i)] - mp3.x0[static_cast<std::size_t>(i)])
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("unknown preset lists the available names") {
  try {
    preset("chicken");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("rps") != std::string::npos);
    CHECK(what.find("mp3-euclid") != std::string::npos);
  }
}
