#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "sectorscope/csv.hpp"
#include "sectorscope/pipeline.hpp"
#include "sectorscope/report.hpp"
#include "sectorscope/synth.hpp"

using namespace sectorscope;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sectorscope_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SECTORSCOPE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(read_file(dir / "manifest.json")); }

}  // namespace

TEST_CASE("cli exit codes") {
  const auto dir = scratch("cli_codes");
  CHECK(cli("synth --scenario drift --seed 3 --out " + (dir / "data").string()) == 0);
  CHECK(cli("validate --data " + (dir / "data").string() + " --out " + (dir / "v").string()) == 0);
  const auto m = manifest(dir / "v");
  CHECK(m["command"] == "validate");
  CHECK(m["inputs"]["rounds"]["sha256"] == sha256_file(dir / "data" / "rounds.csv"));
  CHECK(fs::exists(dir / "v" / "validation.json"));

  CHECK(cli("frobnicate") == 2);
  CHECK(cli("validate --no-such-flag") == 2);
  CHECK(cli("validate --data " + (dir / "missing").string()) == 2);
  CHECK(cli("pca --data " + (dir / "data").string() + " --pca-dim 1") == 2);
  CHECK(cli("tca --data " + (dir / "data").string() + " --r-range 3:1") == 2);
  CHECK(cli("spread --data " + (dir / "data").string() + " --grid 1x1") == 2);
  CHECK(cli("validate --data " + (dir / "data").string() + " --stage bridge") == 2);
  CHECK(cli("--version") == 0);

  write_file_atomic(dir / "data" / "rounds.csv", "round_id,startup_id\nR1,S1\n");
  CHECK(cli("validate --data " + (dir / "data").string() + " --out " + (dir / "v2").string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("tca on a planted rank-2 tensor records chosen_R = 2") {
  const auto dir = scratch("cli_rank");
  REQUIRE(cli("synth --scenario cp --cp-rank 2 --cp-investors 60 --noise 0.05 --seed 4 --out " + dir.string()) == 0);
  REQUIRE(cli("tca --tensor " + (dir / "tensor.csv").string() + " --r-range 1:5 --restarts 4 --seed 1 --out " +
              (dir / "tca").string()) == 0);
  const auto m = manifest(dir / "tca");
  CHECK(m["results"]["chosen_R"] == 2);
  CHECK(m["inputs"].contains("tensor"));
  const auto diag = csv::read_file(dir / "tca" / "tca_diagnostics.csv");
  CHECK(diag.header == std::vector<std::string>{"R", "restart", "error", "similarity"});
  CHECK(diag.rows.size() == 20);
  const auto factors = csv::read_file(dir / "tca" / "tca_factors.csv");
  CHECK(factors.header == std::vector<std::string>{"mode", "component", "index_label", "value"});
  fs::remove_all(dir);
}

TEST_CASE("all on the convergence scenario") {
  const auto dir = scratch("cli_all");
  REQUIRE(cli("synth --scenario convergence --seed 2 --out " + (dir / "data").string()) == 0);
  const std::string common = "all --data " + (dir / "data").string() + " --r-range 1:3 --restarts 2 --seed 5";
  REQUIRE(cli(common + " --out " + (dir / "a").string()) == 0);
  REQUIRE(cli(common + " --out " + (dir / "b").string()) == 0);

  for (const char* f : {"validation.json", "profiles.csv", "pca_loadings.csv", "trajectory.csv", "trajectory.svg",
                        "pca_loadings.svg", "distances.csv", "distances.svg", "spread.csv", "spread.svg",
                        "heatmap_2010.csv", "heatmap_2010.svg", "concentration.csv", "tca_diagnostics.csv",
                        "tca_factors.csv", "tca_factors.svg", "top_investors.csv", "manifest.json"})
    CHECK_MESSAGE(fs::exists(dir / "a" / f), f);

  for (const auto& e : fs::directory_iterator(dir / "a")) {
    const auto name = e.path().filename().string();
    if (name.ends_with(".csv") || name.ends_with(".svg"))
      CHECK_MESSAGE(read_file(e.path()) == read_file(dir / "b" / name), name);
  }

  const auto m = manifest(dir / "a");
  const int argmin = m["results"]["distances"]["stage:seed"]["argmin_year"];
  CHECK(std::abs(argmin - 2014) <= 1);
  CHECK(m["version"].is_string());
  CHECK(m["config"]["seed"] == 5);
  const auto traj = csv::read_file(dir / "a" / "trajectory.csv");
  CHECK(traj.header == std::vector<std::string>{"year", "stage", "x", "y", "sx", "sy"});
  const auto loadings = csv::read_file(dir / "a" / "pca_loadings.csv");
  CHECK(loadings.header == std::vector<std::string>{"tag", "axis1", "axis2"});
  CHECK(loadings.rows.size() == 27);
  fs::remove_all(dir);
}

TEST_CASE("pipeline config validation") {
  PipelineConfig cfg;
  CHECK_THROWS_AS(cfg.validate("validate"), InvalidArgument);  // no inputs
  CHECK_NOTHROW(cfg.validate("synth"));
  cfg.scenario = "atlantis";
  CHECK_THROWS_AS(cfg.validate("synth"), InvalidArgument);
  cfg.scenario = "cp";
  cfg.cp_rank = 0;
  CHECK_THROWS_AS(cfg.validate("synth"), InvalidArgument);
  CHECK_THROWS_AS(cfg.validate("bogus"), InvalidArgument);
  PipelineConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(bad.validate("synth"), InvalidArgument);
}

TEST_CASE("stage and exclusion flags") {
  const auto dir = scratch("pipeline_flags");
  PipelineConfig cfg;
  cfg.out = dir / "data";
  cfg.scenario = "drift";
  cfg.seed = 1;
  run_command("synth", cfg);

  PipelineConfig run;
  run.inputs = DatasetPaths::in_directory(dir / "data");
  run.out = dir / "pca";
  run.stage = StageClass::SeriesA;
  run.exclude_sectors = {};
  const auto summary = run_command("pca", run);
  const auto loadings = csv::read_file(dir / "pca" / "pca_loadings.csv");
  CHECK(loadings.rows.size() == 28);
  const auto traj = csv::read_file(dir / "pca" / "trajectory.csv");
  for (const auto& row : traj.rows) CHECK(row[1] == "a");

  run.out = dir / "profiles";
  run_command("profiles", run);
  for (const auto& row : csv::read_file(dir / "profiles" / "profiles.csv").rows) CHECK(row[2] == "a");
  fs::remove_all(dir);
}
