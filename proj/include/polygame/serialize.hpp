#ifndef POLYGAME_SERIALIZE_HPP
#define POLYGAME_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "polygame/game.hpp"
#include "polygame/integrate.hpp"
#include "polygame/observe.hpp"

namespace polygame {

using nlohmann::json;

// Floats in CSV files carry 17 significant digits (round-trip exact).
std::string format_double(double value);

// GameSpec JSON: {"agents": n, "actions": [..], "blocks": {"i,j": [[..]]},
// "sigma": -1}.  Agent indices in block keys are 1-based; omitted blocks
// default to zero; zero blocks are omitted on output.
json game_to_json(const GameSpec& game);
GameSpec game_from_json(const json& j);

// Trajectory CSV: header `t,agent,coord,x,y`, one row per (time, agent,
// coordinate); agent and coord are 1-based.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
Trajectory trajectory_from_csv(std::istream& in);

// Observable CSV: header `t,name,value`.
void write_observables_csv(std::ostream& out, const std::vector<ObservableSeries>& all);
std::vector<ObservableSeries> observables_from_csv(std::istream& in);

json strategy_profile_to_json(const StrategyProfile& x);
StrategyProfile strategy_profile_from_json(const json& j, const std::string& field);

}  // namespace polygame

#endif  // POLYGAME_SERIALIZE_HPP
