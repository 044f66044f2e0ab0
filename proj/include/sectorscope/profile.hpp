#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sectorscope/ingest.hpp"

namespace sectorscope {

// One investor's (fractional) round counts and amounts per sector dimension.
struct StrategyVector {
  Eigen::VectorXd rounds;
  Eigen::VectorXd amounts;

  double total_rounds() const { return rounds.sum(); }
  // rounds / total_rounds; the share vector used by every geometric analysis.
  Eigen::VectorXd shares() const;
};

struct InvestorYearProfile {
  std::string investor_id;
  int year = 0;
  std::optional<StageClass> stage;  // nullopt: all stages
  StrategyVector vector;
};

struct SplitShare {
  std::size_t parent = 0;
  double round_weight = 0;
  double amount_weight = 0;
};

// Equal split of one investor's participation across k parents: 1/k of the
// round and amount/k of the money each. Empty `parents` yields an empty list
// (the caller routes the round to the unclassified sink).
std::vector<SplitShare> split_round(const RawRound& round, std::span<const std::size_t> parents);

enum class ExclusionMode {
  Drop,  // excluded sectors are removed from the dimensions
  Zero,  // dimensions kept, excluded entries forced to zero
};

struct ProfileOptions {
  std::set<std::string> exclude_sectors;
  ExclusionMode exclusion = ExclusionMode::Drop;
  std::optional<StageClass> stage_filter;
  YearRange years{2000, 2017};
  StageOptions stages;

  // Health Care dropped; used by the barycenter/PCA/distance analyses.
  static ProfileOptions geometric(YearRange years = {2000, 2017});
  // All parent tags retained; used for the tensor.
  static ProfileOptions tensor(YearRange years = {2000, 2017});
};

struct ProfileSet {
  std::vector<std::string> sectors;  // dimension labels, ontology order
  std::vector<InvestorYearProfile> profiles;
  std::size_t unclassified_rounds = 0;  // no resolvable parent tag
  std::size_t unstaged_rounds = 0;      // stage label not classifiable
  std::size_t empty_profiles = 0;       // all activity in excluded sectors

  std::size_t dimension() const { return sectors.size(); }
};

// One profile per active (investor, year[, stage]) sorted by (investor_id,
// year, stage). A round with m investors counts fully for each of them.
ProfileSet build_profiles(const ValidatedDataset& dataset, const ProfileOptions& options);

// Unfiltered profiles followed, per (investor, year), by one profile per
// StageClass with activity. options.stage_filter is ignored.
ProfileSet build_profile_table(const ValidatedDataset& dataset, const ProfileOptions& options);

struct GroupSpec {
  enum class Kind { All, InvestorType, Stage };
  Kind kind = Kind::All;
  InvestorType type = InvestorType::Other;
  StageClass stage = StageClass::Seed;

  static GroupSpec all() { return {}; }
  static GroupSpec of_type(InvestorType t) { return {Kind::InvestorType, t, StageClass::Seed}; }
  static GroupSpec of_stage(StageClass s) { return {Kind::Stage, InvestorType::Other, s}; }
  // "all", "type:<label>", "stage:<seed|a|b|c+>", or a bare type/stage label.
  static GroupSpec parse(std::string_view text);
  std::string label() const;

  bool operator==(const GroupSpec&) const = default;
};

// All/InvestorType select stage-unfiltered profiles; Stage selects profiles
// carrying that stage filter.
std::vector<InvestorYearProfile> group_profiles(std::span<const InvestorYearProfile> profiles,
                                                const GroupSpec& group, const ValidatedDataset& dataset);

// Profiles of one year (and stage filter) in input order.
std::vector<InvestorYearProfile> profiles_for_year(std::span<const InvestorYearProfile> profiles, int year);
std::vector<int> active_years(std::span<const InvestorYearProfile> profiles);

// investor_id,year,stage,sector,rounds,amount; non-zero entries only.
std::string profiles_csv(const ProfileSet& set);

}  // namespace sectorscope
