#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sectorscope/ingest.hpp"
#include "sectorscope/tca.hpp"

namespace sectorscope::synth {

struct Archetype {
  std::string name;
  InvestorType type = InvestorType::Vc;
  int count = 0;
  std::vector<double> sector_mixture;  // probability vector over parent tags
  double activity_rate = 1;            // Poisson mean, rounds per active year
  YearRange active_window{2000, 2017};
  // Seed, A, B, C+ probabilities.
  std::array<double, 4> stage_mixture{1, 0, 0, 0};
  // Dirichlet concentration of each member's personal mixture around
  // sector_mixture; 0 gives every member the archetype mixture.
  double heterogeneity = 0;
  double drift_exposure = 1;
  double concentration_exposure = 1;
  // Members form the planted cohort reported in the truth record.
  bool cohort = false;
};

// Mixtures move toward `target` by magnitude[year] (times the archetype and
// stage exposures): m -> (1 - e) m + e target.
struct Drift {
  std::vector<double> target;
  std::map<int, double> magnitude;
  std::array<double, 4> stage_exposure{1, 1, 1, 1};
  std::optional<int> turn_year;
};

// Within `window` mixtures tighten toward `focus`, linearly up to
// `tightening` at the window end, then relax over `decay_years`.
struct Concentration {
  YearRange window{2010, 2013};
  double tightening = 0.8;
  int decay_years = 2;
  std::vector<double> focus;

  double schedule(int year) const;
};

struct ScenarioConfig {
  std::string name = "custom";
  YearRange years{2000, 2017};
  std::vector<Archetype> archetypes;
  std::optional<Drift> drift;
  std::optional<Concentration> concentration;
  // Log-normal jitter applied to each investor-year mixture.
  double noise = 0;
  std::uint64_t seed = 1;
  // Extra startups that the default filters reject (closed, non-US, founded
  // before 2000), each with one round.
  double distractor_rate = 0;
  SectorOntology ontology = SectorOntology::default_ontology();

  int n_investors() const;
  int n_sectors() const { return static_cast<int>(ontology.size()); }
  // Throws InvalidArgument on a malformed or infeasible configuration.
  void validate() const;

  std::string to_json() const;
  static ScenarioConfig parse_json(std::string_view text);
};

struct PlantedTruth {
  std::string scenario;
  std::optional<CPModel> cp;
  std::map<std::string, std::string> investor_archetype;
  std::vector<std::string> cohort;
  std::map<int, double> drift_path;
  std::map<int, double> concentration_schedule;
  std::optional<int> turn_year;
  std::optional<int> concentration_peak_year;
  std::optional<int> activation_year;

  std::string to_json() const;
};

struct CpSample {
  StrategyTensor tensor;
  PlantedTruth truth;
};

// T = sum_r w_r a_r o b_r o c_r + noise * G. Factor columns are Gaussian,
// normalized; weights are drawn in [1, 1.5], sorted, and scaled so the noise-free
// tensor has unit RMS entry, which makes `noise` a per-entry noise ratio.
CpSample generate_cp_tensor(int n, int s, int k, int rank, double noise, std::uint64_t seed);

struct Ecosystem {
  std::vector<RawStartup> startups;
  std::vector<RawRound> rounds;
  std::vector<RawInvestor> investors;
  SectorOntology ontology;
  PlantedTruth truth;
  ScenarioConfig config;

  ValidatedDataset dataset() const;
  // startups.csv, rounds.csv, investors.csv, ontology.json, truth.json,
  // scenario.json.
  void write(const std::filesystem::path& dir) const;
};

Ecosystem generate_ecosystem(const ScenarioConfig& config);

// Named presets: uniform, drift, convergence, concentration, emergence.
ScenarioConfig preset(std::string_view name, std::uint64_t seed);
std::vector<std::string> preset_names();

// Sector indices of the default ontology used by the presets.
std::vector<double> mixture(const SectorOntology& ontology, const std::map<std::string, double>& weights);

}  // namespace sectorscope::synth
