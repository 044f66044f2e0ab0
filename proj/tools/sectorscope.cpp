// sectorscope: command-line front end for the sector-space analyses.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sectorscope/pipeline.hpp"

namespace {

using namespace sectorscope;

struct Flags {
  std::string data_dir;
  std::string startups, rounds, investors, ontology, tensor;
  std::string years = "2000:2017";
  std::vector<std::string> exclude;
  std::string stage;
  std::string r_range = "1:8";
  std::string grid = "30x30";
};

void add_options(CLI::App* cmd, PipelineConfig& cfg, Flags& f) {
  cmd->add_option("--data", f.data_dir, "Directory holding startups.csv, rounds.csv, investors.csv, ontology.json");
  cmd->add_option("--startups", f.startups, "startups.csv");
  cmd->add_option("--rounds", f.rounds, "rounds.csv");
  cmd->add_option("--investors", f.investors, "investors.csv");
  cmd->add_option("--ontology", f.ontology, "Ontology JSON (default: built-in 28 parent tags)");
  cmd->add_option("--tensor", f.tensor, "Pre-built tensor CSV for tca");
  cmd->add_option("--years", f.years, "Year range FIRST:LAST")->capture_default_str();
  cmd->add_option("--country", cfg.country, "Country code kept by the filter")->capture_default_str();
  cmd->add_option("--exclude-sector", f.exclude, "Parent tag dropped from geometric analyses (repeatable; 'none')");
  cmd->add_option("--stage", f.stage, "Restrict to one stage: seed|a|b|c+");
  cmd->add_option("--pca-dim", cfg.pca_dim, "PCA dimensions")->capture_default_str();
  cmd->add_flag("--refit-per-stage", cfg.refit_per_stage, "Fit a separate PCA per stage for trajectories");
  cmd->add_option("--r-range", f.r_range, "CP rank range MIN:MAX")->capture_default_str();
  cmd->add_option("--restarts", cfg.restarts, "ALS restarts per rank")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "ALS relative tolerance")->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter, "ALS iteration cap")->capture_default_str();
  cmd->add_option("--similarity", cfg.similarity_threshold, "Rank-selection similarity threshold")
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Worker threads for restarts (0: all cores)")->capture_default_str();
  cmd->add_option("--top", cfg.top_k, "Investors listed per component")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--grid", f.grid, "Heatmap grid XxY")->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  cmd->add_flag("--strict-tags", cfg.strict_tags, "Reject unrecognized startup tags");
  cmd->add_option("--scenario", cfg.scenario, "synth scenario: uniform|drift|convergence|concentration|emergence|cp")
      ->capture_default_str();
  cmd->add_option("--cp-rank", cfg.cp_rank, "Planted rank for --scenario cp")->capture_default_str();
  cmd->add_option("--cp-investors", cfg.cp_investors, "Investor count for --scenario cp")->capture_default_str();
  cmd->add_option("--noise", cfg.noise, "Noise ratio for --scenario cp")->capture_default_str();
}

void apply(const Flags& f, PipelineConfig& cfg) {
  if (!f.data_dir.empty()) cfg.inputs = DatasetPaths::in_directory(f.data_dir);
  if (!f.startups.empty()) cfg.inputs.startups = f.startups;
  if (!f.rounds.empty()) cfg.inputs.rounds = f.rounds;
  if (!f.investors.empty()) cfg.inputs.investors = f.investors;
  if (!f.ontology.empty()) cfg.inputs.ontology = f.ontology;
  if (!cfg.inputs.ontology.empty() && !f.data_dir.empty() && f.ontology.empty() &&
      !std::filesystem::exists(cfg.inputs.ontology))
    cfg.inputs.ontology.clear();
  if (!f.tensor.empty()) cfg.tensor = f.tensor;
  cfg.years = YearRange::parse(f.years);
  if (!f.exclude.empty()) {
    cfg.exclude_sectors.clear();
    for (const auto& e : f.exclude)
      if (e != "none" && !e.empty()) cfg.exclude_sectors.insert(e);
  }
  if (!f.stage.empty()) cfg.stage = parse_stage(f.stage);
  const auto r = YearRange::parse(f.r_range);
  cfg.r_min = r.first;
  cfg.r_max = r.last;
  cfg.grid = GridSpec::parse(f.grid);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sector-space analysis of venture financing rounds"};
  app.set_version_flag("--version", std::string(SECTORSCOPE_VERSION));
  app.require_subcommand(1, 1);

  PipelineConfig cfg;
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "Load and check the input tables"},
      {"profiles", "Write investor-year strategy vectors"},
      {"pca", "Sector loadings and barycenter trajectories"},
      {"tca", "CP rank scan, factors and top investors"},
      {"distances", "Distance of stage barycenters to the accelerators"},
      {"spread", "Yearly heatmaps and average distance to the barycenter"},
      {"synth", "Generate a synthetic scenario"},
      {"all", "validate, profiles, pca, distances, spread and tca"},
  };
  for (const auto& [name, help] : commands) add_options(app.add_subcommand(name, help), cfg, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    apply(flags, cfg);
    cfg.validate(command);
  } catch (const Error& e) {
    std::cerr << "sectorscope: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto summary = run_command(command, cfg);
    for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
    if (summary.results.contains("validation")) {
      for (const char* part : {"raw", "filtered"}) {
        const auto& c = summary.results["validation"][part];
        std::cout << part << ": " << c["startups"] << " startups, " << c["rounds"] << " rounds, " << c["investors"]
                  << " investors\n";
      }
    }
    if (summary.results.contains("chosen_R")) std::cout << "chosen_R: " << summary.results["chosen_R"] << '\n';
    std::cout << summary.artifacts.size() << " artifacts written to " << cfg.out.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "sectorscope: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
