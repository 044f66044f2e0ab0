#include "sectorscope/profile.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "sectorscope/csv.hpp"

namespace sectorscope {

Eigen::VectorXd StrategyVector::shares() const {
  const double total = total_rounds();
  if (total <= 0) throw InvalidArgument("share vector of an empty strategy");
  return rounds / total;
}

std::vector<SplitShare> split_round(const RawRound& round, std::span<const std::size_t> parents) {
  std::vector<SplitShare> out;
  if (parents.empty()) return out;
  const double k = static_cast<double>(parents.size());
  const double amount = round.amount.value_or(0.0);
  for (auto p : parents) out.push_back({p, 1.0 / k, amount / k});
  return out;
}

ProfileOptions ProfileOptions::geometric(YearRange years) {
  ProfileOptions o;
  o.exclude_sectors = {"Health Care"};
  o.years = years;
  return o;
}

ProfileOptions ProfileOptions::tensor(YearRange years) {
  ProfileOptions o;
  o.years = years;
  return o;
}

namespace {

struct Accumulator {
  Eigen::VectorXd rounds;
  Eigen::VectorXd amounts;
};

struct Layout {
  std::vector<std::string> labels;
  std::vector<int> target;  // ontology index -> output dimension, -1 if excluded
};

Layout make_layout(const SectorOntology& ontology, const ProfileOptions& options) {
  for (const auto& name : options.exclude_sectors)
    if (!ontology.index_of(name)) throw InvalidArgument("excluded sector '" + name + "' is not a parent tag");
  Layout layout;
  layout.target.assign(ontology.size(), -1);
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    const bool excluded = options.exclude_sectors.contains(ontology.parent(i));
    if (options.exclusion == ExclusionMode::Zero || !excluded) {
      if (!excluded) layout.target[i] = static_cast<int>(layout.labels.size());
      layout.labels.push_back(ontology.parent(i));
    }
  }
  return layout;
}

ProfileSet build(const ValidatedDataset& dataset, const ProfileOptions& options, bool all_stages) {
  if (options.years.empty()) throw InvalidArgument("empty year range");
  const auto& ontology = dataset.ontology();
  const Layout layout = make_layout(ontology, options);
  const auto dim = static_cast<Eigen::Index>(layout.labels.size());

  ProfileSet set;
  set.sectors = layout.labels;

  // Accumulate in round_id order so results do not depend on row order.
  std::vector<const RawRound*> rounds;
  for (const auto& r : dataset.rounds())
    if (options.years.contains(r.announced_date.year)) rounds.push_back(&r);
  std::sort(rounds.begin(), rounds.end(),
            [](const RawRound* a, const RawRound* b) { return a->round_id < b->round_id; });

  using Key = std::tuple<std::string, int, int>;
  std::map<Key, Accumulator> acc;
  auto add = [&](const Key& key, const std::vector<SplitShare>& split) {
    auto [it, fresh] = acc.try_emplace(key);
    if (fresh) {
      it->second.rounds = Eigen::VectorXd::Zero(dim);
      it->second.amounts = Eigen::VectorXd::Zero(dim);
    }
    for (const auto& s : split) {
      const int d = layout.target[s.parent];
      if (d < 0) continue;
      it->second.rounds[d] += s.round_weight;
      it->second.amounts[d] += s.amount_weight;
    }
  };

  for (const RawRound* r : rounds) {
    const RawStartup* startup = dataset.find_startup(r->startup_id);
    const auto resolution = resolve_parents(startup->tags, ontology);
    const auto split = split_round(*r, resolution.parents);
    if (split.empty()) {
      ++set.unclassified_rounds;
      continue;
    }
    const auto stage = classify_stage(r->stage_label, options.stages);
    if (!stage) ++set.unstaged_rounds;
    const int year = r->announced_date.year;
    for (const auto& investor : r->investor_ids) {
      if (all_stages) {
        add({investor, year, -1}, split);
        if (stage) add({investor, year, static_cast<int>(*stage)}, split);
      } else if (!options.stage_filter) {
        add({investor, year, -1}, split);
      } else if (stage && *stage == *options.stage_filter) {
        add({investor, year, static_cast<int>(*stage)}, split);
      }
    }
  }

  for (auto& [key, a] : acc) {
    if (a.rounds.sum() <= 0) {
      ++set.empty_profiles;
      continue;
    }
    InvestorYearProfile p;
    p.investor_id = std::get<0>(key);
    p.year = std::get<1>(key);
    if (std::get<2>(key) >= 0) p.stage = static_cast<StageClass>(std::get<2>(key));
    p.vector.rounds = std::move(a.rounds);
    p.vector.amounts = std::move(a.amounts);
    set.profiles.push_back(std::move(p));
  }
  return set;
}

}  // namespace

ProfileSet build_profiles(const ValidatedDataset& dataset, const ProfileOptions& options) {
  return build(dataset, options, false);
}

ProfileSet build_profile_table(const ValidatedDataset& dataset, const ProfileOptions& options) {
  return build(dataset, options, true);
}

GroupSpec GroupSpec::parse(std::string_view text) {
  const auto t = trim(text);
  if (t == "all") return all();
  std::string_view body = t;
  const auto colon = body.find(':');
  if (colon != std::string_view::npos) {
    const auto kind = body.substr(0, colon);
    const auto value = body.substr(colon + 1);
    if (kind == "type") return of_type(parse_investor_type(value));
    if (kind == "stage") return of_stage(parse_stage(value));
    throw InvalidArgument("unknown group selector '" + t + "'");
  }
  for (auto type : kAllInvestorTypes)
    if (body == to_string(type)) return of_type(type);
  if (auto s = classify_stage(body, {})) return of_stage(*s);
  throw InvalidArgument("unknown group label '" + t + "'");
}

std::string GroupSpec::label() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::InvestorType: return "type:" + std::string(to_string(type));
    case Kind::Stage: return "stage:" + std::string(to_string(stage));
  }
  return "all";
}

std::vector<InvestorYearProfile> group_profiles(std::span<const InvestorYearProfile> profiles,
                                                const GroupSpec& group, const ValidatedDataset& dataset) {
  std::vector<InvestorYearProfile> out;
  for (const auto& p : profiles) {
    switch (group.kind) {
      case GroupSpec::Kind::All:
        if (!p.stage) out.push_back(p);
        break;
      case GroupSpec::Kind::Stage:
        if (p.stage && *p.stage == group.stage) out.push_back(p);
        break;
      case GroupSpec::Kind::InvestorType: {
        if (p.stage) break;
        const RawInvestor* inv = dataset.find_investor(p.investor_id);
        if (!inv) throw InvalidArgument("profile references unknown investor " + p.investor_id);
        if (inv->type == group.type) out.push_back(p);
        break;
      }
    }
  }
  return out;
}

std::vector<InvestorYearProfile> profiles_for_year(std::span<const InvestorYearProfile> profiles, int year) {
  std::vector<InvestorYearProfile> out;
  for (const auto& p : profiles)
    if (p.year == year) out.push_back(p);
  return out;
}

std::vector<int> active_years(std::span<const InvestorYearProfile> profiles) {
  std::vector<int> years;
  for (const auto& p : profiles) years.push_back(p.year);
  std::sort(years.begin(), years.end());
  years.erase(std::unique(years.begin(), years.end()), years.end());
  return years;
}

std::string profiles_csv(const ProfileSet& set) {
  csv::Writer w({"investor_id", "year", "stage", "sector", "rounds", "amount"});
  for (const auto& p : set.profiles) {
    const std::string stage = p.stage ? std::string(to_string(*p.stage)) : "all";
    for (Eigen::Index d = 0; d < p.vector.rounds.size(); ++d) {
      if (p.vector.rounds[d] == 0) continue;
      w.add({p.investor_id, std::to_string(p.year), stage, set.sectors[d], format_double(p.vector.rounds[d]),
             format_double(p.vector.amounts[d])});
    }
  }
  return w.str();
}

}  // namespace sectorscope
