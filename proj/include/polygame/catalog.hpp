#ifndef POLYGAME_CATALOG_HPP
#define POLYGAME_CATALOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polygame/dynamics.hpp"
#include "polygame/game.hpp"
#include "polygame/integrate.hpp"
#include "polygame/observe.hpp"

namespace polygame {

// Two-player weighted Rock-Paper-Scissors:
//   A^{12} = [[0,-a,b],[a,0,-c],[-b,c,0]],  A^{21} = -(A^{12})^T.
GameSpec weighted_rps(double a, double b, double c);

// Closed-form interior Nash (c,b,a)/(a+b+c) per agent; requires a,b,c > 0.
StrategyProfile weighted_rps_nash(double a, double b, double c);

// Three-player Matching Pennies:
//   A^{12} = A^{23} = A^{31} = [[a,-1],[-1,a]],
// remaining blocks filled by the zero-sum reflection A^{ij} = -(A^{ji})^T.
GameSpec matching_pennies_3(double a);

// The equilibrium continuum of matching_pennies_3(1): x^i = (p, 1-p) for all
// agents, parametrized over the stacked strategy space.
EquilibriumReference matching_pennies_line();

// Random antisymmetric-block game: blocks for i<j drawn uniformly from
// [-magnitude, magnitude] with the pinned xoshiro256++ stream (row-major
// entries, pairs in lexicographic order), blocks for j>i by -transpose.
// Identical seeds reproduce identical games on every platform.
GameSpec random_zero_sum(std::uint64_t seed, int n_agents, const std::vector<int>& action_counts,
                         double magnitude);

// The random fully-mixed Matching Pennies start used by the mp3 presets:
// first coordinates 0.2 + 0.6*u from the pinned PRNG.  The margin keeps the
// conservative Euclidean orbit strictly interior.
StrategyProfile mp3_random_x0(std::uint64_t seed);

// A ready-made experiment setup, fully populated.
struct PresetExperiment {
  std::string name;
  GameSpec game;
  std::vector<RegularizerSpec> regs;
  StrategyProfile x0;
  FlowParams params;                 // default variant/alpha for this preset
  std::vector<double> studied_alphas;  // perturbation strengths this setup is studied at
  IntegratorConfig integrator;
  EquilibriumReference reference;
};

// Known names: "rps", "wrps", "mp3", "mp3-euclid".  Unknown names throw
// ConfigError listing the available presets.
PresetExperiment preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace polygame

#endif  // POLYGAME_CATALOG_HPP
