#include "polygame/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace polygame {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json game_to_json(const GameSpec& game) {
  json j;
  j["agents"] = game.n_agents;
  j["actions"] = game.action_counts;
  j["sigma"] = game.sigma;
  json blocks = json::object();
  for (int i = 0; i < game.n_agents; ++i)
    for (int k = 0; k < game.n_agents; ++k) {
      const Mat& block = game.block(i, k);
      if (block.cwiseAbs().maxCoeff() == 0.0) continue;
      json rows = json::array();
      for (Eigen::Index r = 0; r < block.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < block.cols(); ++c) row.push_back(block(r, c));
        rows.push_back(std::move(row));
      }
      blocks[std::to_string(i + 1) + "," + std::to_string(k + 1)] = std::move(rows);
    }
  j["blocks"] = std::move(blocks);
  return j;
}

GameSpec game_from_json(const json& j) {
  if (!j.contains("agents") || !j["agents"].is_number_integer())
    throw ConfigError("game.agents", "missing or not an integer");
  if (!j.contains("actions") || !j["actions"].is_array())
    throw ConfigError("game.actions", "missing or not an array");
  const int n = j["agents"].get<int>();
  std::vector<int> counts;
  for (const auto& c : j["actions"]) {
    if (!c.is_number_integer() || c.get<int>() < 1)
      throw ConfigError("game.actions", "entries must be positive integers");
    counts.push_back(c.get<int>());
  }
  if (static_cast<int>(counts.size()) != n)
    throw ConfigError("game.actions", "length must equal the agent count");
  if (j.contains("sigma") && !j["sigma"].is_number_integer())
    throw ConfigError("game.sigma", "must be -1 or +1");
  const int sigma = j.value("sigma", -1);
  if (sigma != -1 && sigma != 1) throw ConfigError("game.sigma", "must be -1 or +1");

  GameSpec game = make_game(n, counts, sigma);
  if (j.contains("blocks")) {
    if (!j["blocks"].is_object()) throw ConfigError("game.blocks", "must be an object");
    for (const auto& [key, rows] : j["blocks"].items()) {
      int bi = 0, bj = 0;
      if (std::sscanf(key.c_str(), "%d,%d", &bi, &bj) != 2 || bi < 1 || bj < 1 || bi > n || bj > n)
        throw ConfigError("game.blocks", "bad block key '" + key + "' (expected \"i,j\", 1-based)");
      if (!rows.is_array()) throw ConfigError("game.blocks", "block '" + key + "' must be an array of rows");
      Mat block(counts[static_cast<std::size_t>(bi - 1)], counts[static_cast<std::size_t>(bj - 1)]);
      if (static_cast<Eigen::Index>(rows.size()) != block.rows())
        throw ConfigError("game.blocks", "block '" + key + "' has wrong row count");
      for (Eigen::Index r = 0; r < block.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != block.cols())
          throw ConfigError("game.blocks", "block '" + key + "' has wrong column count in row " +
                                               std::to_string(r));
        for (Eigen::Index c = 0; c < block.cols(); ++c) {
          const auto& cell = row[static_cast<std::size_t>(c)];
          if (!cell.is_number())
            throw ConfigError("game.blocks", "block '" + key + "' has a non-numeric entry");
          block(r, c) = cell.get<double>();
        }
      }
      set_block(game, bi - 1, bj - 1, block);
    }
  }
  return game;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,agent,coord,x,y\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::string t = format_double(traj.times[k]);
    for (std::size_t i = 0; i < traj.x_states[k].size(); ++i) {
      const Vec& x = traj.x_states[k][i];
      const Vec& y = traj.y_states[k][i];
      for (Eigen::Index a = 0; a < x.size(); ++a)
        out << t << ',' << i + 1 << ',' << a + 1 << ',' << format_double(x[a]) << ','
            << format_double(y[a]) << '\n';
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const char* where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError("csv", std::string(where) + ": cannot parse number '" + text + "'");
  return v;
}

long parse_index(const std::string& text, const char* where) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || v < 1)
    throw ConfigError("csv", std::string(where) + ": cannot parse index '" + text + "'");
  return v;
}

}  // namespace

Trajectory trajectory_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"t", "agent", "coord", "x", "y"})
    throw ConfigError("csv", "trajectory file must start with header 't,agent,coord,x,y'");

  struct Row {
    double t;
    int agent, coord;
    double x, y;
  };
  std::vector<Row> rows;
  int n_agents = 0;
  std::map<int, int> dims;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5)
      throw ConfigError("csv", "line " + std::to_string(lineno) + ": expected 5 fields, got " +
                                   std::to_string(fields.size()));
    Row row{};
    row.t = parse_double(fields[0], "t");
    row.agent = static_cast<int>(parse_index(fields[1], "agent"));
    row.coord = static_cast<int>(parse_index(fields[2], "coord"));
    row.x = parse_double(fields[3], "x");
    row.y = parse_double(fields[4], "y");
    n_agents = std::max(n_agents, row.agent);
    dims[row.agent] = std::max(dims[row.agent], row.coord);
    rows.push_back(row);
  }
  if (rows.empty()) throw ConfigError("csv", "trajectory file has no data rows");

  std::vector<int> sizes;
  for (int i = 1; i <= n_agents; ++i) {
    if (dims.find(i) == dims.end()) throw ConfigError("csv", "agent " + std::to_string(i) + " has no rows");
    sizes.push_back(dims[i]);
  }

  Trajectory traj;
  const auto rows_per_time = [&]() {
    std::size_t total = 0;
    for (int s : sizes) total += static_cast<std::size_t>(s);
    return total;
  }();
  if (rows.size() % rows_per_time != 0)
    throw ConfigError("csv", "row count is not a whole number of time records");

  for (std::size_t k = 0; k < rows.size(); k += rows_per_time) {
    const double t = rows[k].t;
    StrategyProfile x;
    PayoffProfile y;
    for (int s : sizes) {
      x.emplace_back(Vec::Zero(s));
      y.emplace_back(Vec::Zero(s));
    }
    for (std::size_t r = k; r < k + rows_per_time; ++r) {
      const Row& row = rows[r];
      if (row.t != t)
        throw ConfigError("csv", "rows for one time stamp are not contiguous near t=" + format_double(t));
      x[static_cast<std::size_t>(row.agent - 1)][row.coord - 1] = row.x;
      y[static_cast<std::size_t>(row.agent - 1)][row.coord - 1] = row.y;
    }
    traj.times.push_back(t);
    traj.x_states.push_back(std::move(x));
    traj.y_states.push_back(std::move(y));
  }
  return traj;
}

void write_observables_csv(std::ostream& out, const std::vector<ObservableSeries>& all) {
  out << "t,name,value\n";
  if (all.empty()) return;
  // Interleaved by time so the file reads like a log of the run.
  const std::size_t n_times = all.front().times.size();
  for (std::size_t k = 0; k < n_times; ++k)
    for (const ObservableSeries& s : all)
      out << format_double(s.times[k]) << ',' << s.name << ',' << format_double(s.values[k]) << '\n';
}

std::vector<ObservableSeries> observables_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"t", "name", "value"})
    throw ConfigError("csv", "observable file must start with header 't,name,value'");

  std::vector<ObservableSeries> all;
  std::map<std::string, std::size_t> index;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw ConfigError("csv", "line " + std::to_string(lineno) + ": expected 3 fields, got " +
                                   std::to_string(fields.size()));
    const double t = parse_double(fields[0], "t");
    const double v = parse_double(fields[2], "value");
    auto [it, inserted] = index.try_emplace(fields[1], all.size());
    if (inserted) {
      ObservableSeries s;
      s.name = fields[1];
      all.push_back(std::move(s));
    }
    all[it->second].times.push_back(t);
    all[it->second].values.push_back(v);
  }
  return all;
}

json strategy_profile_to_json(const StrategyProfile& x) {
  json j = json::array();
  for (const Vec& xi : x) {
    json row = json::array();
    for (Eigen::Index a = 0; a < xi.size(); ++a) row.push_back(xi[a]);
    j.push_back(std::move(row));
  }
  return j;
}

StrategyProfile strategy_profile_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "must be a nonempty array of per-agent arrays");
  StrategyProfile x;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw ConfigError(field, "each agent entry must be a nonempty array");
    Vec xi(row.size());
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (!row[a].is_number()) throw ConfigError(field, "entries must be numbers");
      xi[static_cast<Eigen::Index>(a)] = row[a].get<double>();
    }
    x.push_back(std::move(xi));
  }
  return x;
}

}  // namespace polygame
