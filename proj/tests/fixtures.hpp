#pragma once

#include <random>
#include <string>
#include <vector>

#include "sectorscope/ingest.hpp"
#include "sectorscope/profile.hpp"

namespace fixtures {

using namespace sectorscope;

inline RawStartup startup(std::string id, std::vector<std::string> tags, Date founded = {2005, 6, 1},
                          std::string country = "USA", StartupStatus status = StartupStatus::Active) {
  return {id, "Name " + id, std::move(country), status, founded, std::move(tags)};
}

inline RawRound round(std::string id, std::string startup, Date date, std::string stage,
                      std::vector<std::string> investors, std::optional<double> amount = 1e6) {
  return {std::move(id), std::move(startup), date, std::move(stage), amount, std::move(investors)};
}

inline RawInvestor investor(std::string id, InvestorType type = InvestorType::Vc) {
  return {id, "Investor " + id, type};
}

// Random dataset over the default ontology: every round carries 1-3 tags
// drawn from parents and single-parent aliases, 1-3 investors and a stage.
inline ValidatedDataset random_dataset(std::mt19937_64& rng, int investors, int rounds, YearRange years = {2000, 2017}) {
  const auto onto = SectorOntology::default_ontology();
  std::vector<std::string> tags = onto.parent_tags();
  for (const auto& [child, ids] : onto.child_map()) tags.push_back(child);
  const std::vector<std::string> stages = {"seed", "Series A", "series_b", "Series C", "Series F", "angel"};
  const std::vector<InvestorType> types = {InvestorType::Accelerator, InvestorType::Vc, InvestorType::Angel,
                                           InvestorType::MicroVc, InvestorType::CorporateVc};

  std::vector<RawInvestor> inv;
  for (int i = 0; i < investors; ++i) inv.push_back(investor("I" + std::to_string(1000 + i), types[i % types.size()]));
  std::vector<RawStartup> st;
  std::vector<RawRound> rs;
  std::uniform_int_distribution<int> ntag(1, 3), pick_tag(0, static_cast<int>(tags.size()) - 1),
      pick_year(years.first, years.last), pick_stage(0, static_cast<int>(stages.size()) - 1),
      pick_inv(0, investors - 1), nparticipants(1, 3);
  for (int r = 0; r < rounds; ++r) {
    const std::string sid = "S" + std::to_string(10000 + r);
    std::vector<std::string> t;
    for (int k = ntag(rng); k > 0; --k) t.push_back(tags[static_cast<std::size_t>(pick_tag(rng))]);
    st.push_back(startup(sid, t, {2000, 3, 1}));
    std::vector<std::string> who;
    for (int k = nparticipants(rng); k > 0; --k) {
      auto id = inv[static_cast<std::size_t>(pick_inv(rng))].investor_id;
      if (std::find(who.begin(), who.end(), id) == who.end()) who.push_back(id);
    }
    rs.push_back(round("R" + std::to_string(10000 + r), sid, {pick_year(rng), 5, 5},
                       stages[static_cast<std::size_t>(pick_stage(rng))], who, 1e5 * (1 + r % 7)));
  }
  return ValidatedDataset::create(st, rs, inv, onto);
}

}  // namespace fixtures
