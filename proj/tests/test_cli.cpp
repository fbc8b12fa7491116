#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polygame/serialize.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "polygame_cli_test";

int run_cli(const std::string& args) {
  const std::string command = std::string(POLYGAME_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct WorkDirFixture {
  WorkDirFixture() {
    fs::remove_all(kWorkDir);
    fs::create_directories(kWorkDir);
  }
};

}  // namespace

TEST_CASE_FIXTURE(WorkDirFixture, "run executes a preset config and is byte-deterministic") {
  const fs::path cfg = kWorkDir / "run.json";
  write_file(cfg, R"({
    "game": "rps",
    "variant": "dftrl",
    "alpha": 0.15,
    "integrator": {"T": 5.0, "dt": 0.01, "stride": 10},
    "output": ")" + (kWorkDir / "out1").string() + R"("
  })");
  CHECK(run_cli("run " + cfg.string()) == 0);
  CHECK(fs::exists(kWorkDir / "out1" / "trajectory.csv"));
  CHECK(fs::exists(kWorkDir / "out1" / "observables.csv"));
  CHECK(fs::exists(kWorkDir / "out1" / "summary.json"));

  const fs::path cfg2 = kWorkDir / "run2.json";
  write_file(cfg2, R"({
    "game": "rps",
    "variant": "dftrl",
    "alpha": 0.15,
    "integrator": {"T": 5.0, "dt": 0.01, "stride": 10},
    "output": ")" + (kWorkDir / "out2").string() + R"("
  })");
  CHECK(run_cli("run " + cfg2.string()) == 0);
  CHECK(slurp(kWorkDir / "out1" / "trajectory.csv") == slurp(kWorkDir / "out2" / "trajectory.csv"));
  CHECK(slurp(kWorkDir / "out1" / "observables.csv") ==
        slurp(kWorkDir / "out2" / "observables.csv"));
}

TEST_CASE_FIXTURE(WorkDirFixture, "config problems exit with code 1") {
  const fs::path bad_json = kWorkDir / "broken.json";
  write_file(bad_json, "{\"game\": \"rps\",");
  CHECK(run_cli("run " + bad_json.string()) == 1);

  const fs::path bad_field = kWorkDir / "field.json";
  write_file(bad_field, R"({"game": "rps", "alpha": -1})");
  CHECK(run_cli("run " + bad_field.string()) == 1);

  CHECK(run_cli("run " + (kWorkDir / "missing.json").string()) == 1);
}

TEST_CASE_FIXTURE(WorkDirFixture, "integration failures exit with code 2") {
  const fs::path cfg = kWorkDir / "exit.json";
  write_file(cfg, R"({
    "game": {"agents": 2, "actions": [2, 2],
             "blocks": {"1,2": [[1, -1], [-1, 1]], "2,1": [[-1, 1], [1, -1]]}},
    "regularizers": "euclidean",
    "x0": [[0.995, 0.005], [0.005, 0.995]],
    "integrator": {"T": 10.0, "dt": 0.01, "stride": 10},
    "output": ")" + (kWorkDir / "exit_out").string() + R"("
  })");
  CHECK(run_cli("run " + cfg.string()) == 2);
}

TEST_CASE_FIXTURE(WorkDirFixture, "sweep writes per-alpha outputs and the combined csv") {
  const fs::path cfg = kWorkDir / "sweep.json";
  write_file(cfg, R"({
    "game": "wrps",
    "variant": "dftrl",
    "alpha": [0.05, 0.15],
    "integrator": {"T": 20.0, "dt": 0.01, "stride": 100},
    "output": ")" + (kWorkDir / "sweep_out").string() + R"("
  })");
  CHECK(run_cli("sweep " + cfg.string() + " --jobs 2") == 0);
  CHECK(fs::exists(kWorkDir / "sweep_out" / "sweep.csv"));
  CHECK(fs::exists(kWorkDir / "sweep_out" / "alpha_0.05" / "trajectory.csv"));
  CHECK(fs::exists(kWorkDir / "sweep_out" / "alpha_0.15" / "summary.json"));

  const std::string csv = slurp(kWorkDir / "sweep_out" / "sweep.csv");
  CHECK(csv.rfind("alpha,final_dist,final_fenchel\n", 0) == 0);

  const fs::path empty = kWorkDir / "empty.json";
  write_file(empty, R"({"game": "wrps", "alpha": []})");
  CHECK(run_cli("sweep " + empty.string()) == 1);
}

TEST_CASE_FIXTURE(WorkDirFixture, "verify rejects unknown suites") {
  CHECK(run_cli("verify thermodynamics") == 1);
}

TEST_CASE_FIXTURE(WorkDirFixture, "plot renders series, simplex and cube charts") {
  const fs::path cfg = kWorkDir / "plot_run.json";
  write_file(cfg, R"({
    "game": "rps",
    "variant": "dftrl",
    "alpha": 0.15,
    "integrator": {"T": 5.0, "dt": 0.01, "stride": 10},
    "output": ")" + (kWorkDir / "plot_out").string() + R"("
  })");
  REQUIRE(run_cli("run " + cfg.string()) == 0);

  const fs::path mp_cfg = kWorkDir / "plot_mp3.json";
  write_file(mp_cfg, R"({
    "game": "mp3",
    "variant": "dftrl",
    "alpha": 0.1,
    "integrator": {"T": 5.0, "dt": 0.01, "stride": 10},
    "output": ")" + (kWorkDir / "plot_mp_out").string() + R"("
  })");
  REQUIRE(run_cli("run " + mp_cfg.string()) == 0);

  const std::string obs = (kWorkDir / "plot_out" / "observables.csv").string();
  const std::string traj = (kWorkDir / "plot_out" / "trajectory.csv").string();
  const std::string mp_traj = (kWorkDir / "plot_mp_out" / "trajectory.csv").string();

  const fs::path series_svg = kWorkDir / "series.svg";
  CHECK(run_cli("plot " + obs + " --kind series --out " + series_svg.string()) == 0);
  const std::string series_text = slurp(series_svg);
  CHECK(series_text.rfind("<svg", 0) == 0);
  CHECK(series_text.find("fenchel") != std::string::npos);

  const fs::path simplex_svg = kWorkDir / "simplex.svg";
  CHECK(run_cli("plot " + traj + " --kind simplex --agent 1 --out " + simplex_svg.string()) == 0);
  CHECK(slurp(simplex_svg).find("polyline") != std::string::npos);

  const fs::path cube_svg = kWorkDir / "cube.svg";
  CHECK(run_cli("plot " + mp_traj + " --kind cube --out " + cube_svg.string()) == 0);
  CHECK(slurp(cube_svg).find("polyline") != std::string::npos);

  // two inputs overlay onto one chart with prefixed names
  const std::string obs2 = (kWorkDir / "plot_mp_out" / "observables.csv").string();
  const fs::path overlay_svg = kWorkDir / "overlay.svg";
  CHECK(run_cli("plot " + obs + " " + obs2 + " --kind series --out " + overlay_svg.string()) == 0);
  CHECK(slurp(overlay_svg).find("observables:fenchel") != std::string::npos);
}

TEST_CASE_FIXTURE(WorkDirFixture, "plot rejects malformed and empty inputs") {
  const fs::path empty_csv = kWorkDir / "empty.csv";
  write_file(empty_csv, "t,name,value\n");
  CHECK(run_cli("plot " + empty_csv.string() + " --kind series --out " +
                (kWorkDir / "x.svg").string()) == 1);

  const fs::path garbled = kWorkDir / "garbled.csv";
  write_file(garbled, "nonsense\n1,2\n");
  CHECK(run_cli("plot " + garbled.string() + " --kind series --out " +
                (kWorkDir / "y.svg").string()) == 1);
  CHECK(run_cli("plot " + garbled.string() + " --kind simplex --out " +
                (kWorkDir / "z.svg").string()) == 1);

  CHECK(run_cli("plot " + empty_csv.string() + " --kind pie --out " +
                (kWorkDir / "w.svg").string()) == 1);
}

TEST_CASE_FIXTURE(WorkDirFixture, "shipped preset configs run as-is") {
  const fs::path presets = fs::path(POLYGAME_PRESETS_DIR);
  REQUIRE(fs::exists(presets / "rps-dftrl.json"));

  // copy so relative "output" paths land in the scratch directory
  const polygame::json cfg = polygame::json::parse(slurp(presets / "rps-dftrl.json"));
  polygame::json shortened = cfg;
  shortened["integrator"]["T"] = 5.0;
  shortened["output"] = (kWorkDir / "preset_out").string();
  const fs::path local = kWorkDir / "rps-dftrl.json";
  write_file(local, shortened.dump(2));
  CHECK(run_cli("run " + local.string()) == 0);
}
