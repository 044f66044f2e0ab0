#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sectorscope/ingest.hpp"
#include "sectorscope/metrics.hpp"

namespace sectorscope {

struct PipelineConfig {
  DatasetPaths inputs;
  // Pre-built tensor (tensor_csv format) analysed by `tca` instead of the dataset.
  std::optional<std::filesystem::path> tensor;
  YearRange years{2000, 2017};
  std::string country = "USA";
  std::set<std::string> exclude_sectors{"Health Care"};
  std::optional<StageClass> stage;
  int pca_dim = 2;
  bool refit_per_stage = false;
  int r_min = 1;
  int r_max = 8;
  int restarts = 8;
  double tol = 1e-6;
  int max_iter = 500;
  double similarity_threshold = 0.8;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t top_k = 10;
  GridSpec grid;
  std::filesystem::path out = "out";
  bool strict_tags = false;

  // synth
  std::string scenario = "convergence";
  int cp_rank = 2;
  int cp_investors = 100;
  double noise = 0.05;

  // Throws InvalidArgument on out-of-range values or missing inputs for
  // `command`.
  void validate(std::string_view command) const;
  nlohmann::ordered_json to_json() const;
};

struct RunSummary {
  std::vector<std::string> artifacts;  // file names relative to the output directory
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
};

inline const std::vector<std::string>& pipeline_commands() {
  static const std::vector<std::string> names = {"validate", "profiles", "pca",   "tca",
                                                 "distances", "spread",  "synth", "all"};
  return names;
}

// Runs one subcommand, writing its artifacts and manifest.json under
// config.out.
RunSummary run_command(std::string_view command, const PipelineConfig& config);

}  // namespace sectorscope
