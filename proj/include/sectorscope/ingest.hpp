#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sectorscope/common.hpp"
#include "sectorscope/ontology.hpp"

namespace sectorscope {

enum class StartupStatus { Active, Closed, Acquired, Ipo };
enum class InvestorType { Accelerator, MicroVc, Vc, CorporateVc, Angel, Other };
// SeriesCPlus aggregates Series C and every later alphabet round.
enum class StageClass { Seed, SeriesA, SeriesB, SeriesCPlus };

inline constexpr std::array<StageClass, 4> kAllStages = {StageClass::Seed, StageClass::SeriesA,
                                                         StageClass::SeriesB, StageClass::SeriesCPlus};
inline constexpr std::array<InvestorType, 6> kAllInvestorTypes = {
    InvestorType::Accelerator, InvestorType::MicroVc, InvestorType::Vc,
    InvestorType::CorporateVc, InvestorType::Angel,   InvestorType::Other};

std::string_view to_string(StartupStatus status);
std::string_view to_string(InvestorType type);
// Short CLI form: seed, a, b, c+.
std::string_view to_string(StageClass stage);
StartupStatus parse_status(std::string_view text);
InvestorType parse_investor_type(std::string_view text);
// Accepts the short forms and anything classify_stage maps strictly.
StageClass parse_stage(std::string_view text);

struct RawStartup {
  std::string startup_id;
  std::string name;
  std::string country_code;
  StartupStatus status = StartupStatus::Active;
  Date founded_date;
  std::vector<std::string> tags;

  bool operator==(const RawStartup&) const = default;
};

struct RawRound {
  std::string round_id;
  std::string startup_id;
  Date announced_date;
  std::string stage_label;
  std::optional<double> amount;  // USD; nullopt when unknown
  std::vector<std::string> investor_ids;

  bool operator==(const RawRound&) const = default;
};

struct RawInvestor {
  std::string investor_id;
  std::string name;
  InvestorType type = InvestorType::Other;

  bool operator==(const RawInvestor&) const = default;
};

struct StageOptions {
  // Unknown labels throw ClassificationError instead of using `fallback`.
  bool strict = false;
  std::optional<StageClass> fallback;
};

// Case and punctuation are ignored: "Series-A", "series_a" and "A" all map to
// SeriesA; "Series D".."Series Z" map to SeriesCPlus. Unknown labels give
// `fallback` (possibly nullopt) unless strict.
std::optional<StageClass> classify_stage(std::string_view label, const StageOptions& options = {});

struct LoadOptions {
  // Unrecognized startup tags are an error rather than a warning.
  bool strict_tags = false;
};

struct DatasetCounts {
  std::size_t startups = 0;
  std::size_t rounds = 0;
  std::size_t investors = 0;
  std::size_t participations = 0;
  std::size_t parent_tags = 0;
};

struct FilterOptions;

// Four tables with unique keys and resolved foreign keys. Immutable once
// built; only `create` and the filters construct one.
class ValidatedDataset {
 public:
  static ValidatedDataset create(std::vector<RawStartup> startups, std::vector<RawRound> rounds,
                                 std::vector<RawInvestor> investors, SectorOntology ontology,
                                 const LoadOptions& options = {});

  const std::vector<RawStartup>& startups() const { return startups_; }
  const std::vector<RawRound>& rounds() const { return rounds_; }
  const std::vector<RawInvestor>& investors() const { return investors_; }
  const SectorOntology& ontology() const { return ontology_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const RawStartup* find_startup(std::string_view id) const;
  const RawInvestor* find_investor(std::string_view id) const;
  DatasetCounts counts() const;

 private:
  ValidatedDataset() = default;
  void build_index();

  std::vector<RawStartup> startups_;
  std::vector<RawRound> rounds_;
  std::vector<RawInvestor> investors_;
  SectorOntology ontology_;
  std::vector<std::string> warnings_;
  std::unordered_map<std::string, std::size_t> startup_index_;
  std::unordered_map<std::string, std::size_t> investor_index_;

  friend ValidatedDataset filter_startups(const ValidatedDataset&, const FilterOptions&);
};

struct DatasetPaths {
  std::filesystem::path startups;
  std::filesystem::path rounds;
  std::filesystem::path investors;
  std::filesystem::path ontology;

  // startups.csv, rounds.csv, investors.csv, ontology.json inside `dir`.
  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

// An empty ontology path selects the built-in default ontology.
ValidatedDataset load_dataset(const DatasetPaths& paths, const LoadOptions& options = {});

// Table parsers, exposed for callers holding text rather than files.
std::vector<RawStartup> parse_startups(std::string_view text, const std::string& source);
std::vector<RawRound> parse_rounds(std::string_view text, const std::string& source);
std::vector<RawInvestor> parse_investors(std::string_view text, const std::string& source);

std::string startups_csv(const std::vector<RawStartup>& startups);
std::string rounds_csv(const std::vector<RawRound>& rounds);
std::string investors_csv(const std::vector<RawInvestor>& investors);

// Writes the four files in the load_dataset schemas.
void export_dataset(const ValidatedDataset& dataset, const std::filesystem::path& dir);

struct FilterOptions {
  // Startups must be founded strictly after this date.
  Date founded_after{2000, 1, 1};
  std::string country = "USA";
  // Rounds announced outside this window are dropped before the
  // "appears in at least one round" predicate is evaluated.
  YearRange round_years{2000, 2017};
};

// Keeps startups that match the country, are not closed, carry at least one
// tag, appear in at least one in-window round and were founded after the
// cutoff. Rounds of dropped startups are dropped. Idempotent. An empty result
// adds a warning.
ValidatedDataset filter_startups(const ValidatedDataset& dataset, const FilterOptions& options);
inline ValidatedDataset filter_startups(const ValidatedDataset& dataset) {
  return filter_startups(dataset, FilterOptions{});
}

}  // namespace sectorscope
