#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "sectorscope/report.hpp"

using namespace sectorscope;
using namespace fixtures;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sectorscope_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("stage classification") {
  CHECK(classify_stage("Seed") == StageClass::Seed);
  CHECK(classify_stage("series_a") == StageClass::SeriesA);
  CHECK(classify_stage("Series-A") == StageClass::SeriesA);
  CHECK(classify_stage("A") == StageClass::SeriesA);
  CHECK(classify_stage("Series B") == StageClass::SeriesB);
  CHECK(classify_stage("Series C") == StageClass::SeriesCPlus);
  CHECK(classify_stage("series_h") == StageClass::SeriesCPlus);
  CHECK(classify_stage("c+") == StageClass::SeriesCPlus);
  CHECK_FALSE(classify_stage("angel").has_value());
  CHECK(classify_stage("angel", {.strict = false, .fallback = StageClass::Seed}) == StageClass::Seed);
  CHECK_THROWS_AS(classify_stage("pre-seed", {.strict = true, .fallback = std::nullopt}), ClassificationError);
  CHECK(parse_stage("c+") == StageClass::SeriesCPlus);
  for (auto s : kAllStages) CHECK(parse_stage(to_string(s)) == s);
}

TEST_CASE("table parsing reports file and row") {
  const std::string ok =
      "startup_id,name,country_code,status,founded_date,tags\n"
      "S1,\"Acme, Inc\",USA,active,2005-01-01,Software|Payments\n"
      "S2,Beta,USA,closed,2006-02-03,\n";
  const auto s = parse_startups(ok, "startups.csv");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "Acme, Inc");
  CHECK(s[0].tags == std::vector<std::string>{"Software", "Payments"});
  CHECK(s[1].tags.empty());
  CHECK(s[1].status == StartupStatus::Closed);

  try {
    parse_startups("startup_id,name,country_code,status,founded_date,tags\nS1,a,USA,active,2005-01-01,x\n"
                   "S2,b,USA,active,2005-13-01,x\n",
                   "startups.csv");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.row() == 3);
    CHECK(e.file() == "startups.csv");
  }
  CHECK_THROWS_AS(parse_startups("startup_id,name\nS1,a\n", "s"), SchemaError);

  const auto r = parse_rounds(
      "round_id,startup_id,announced_date,stage_label,amount_usd,investor_ids\n"
      "R1,S1,2010-05-05,Series A,2500000,I1|I2\nR2,S1,2011-05-05,seed,,I1\n",
      "rounds.csv");
  REQUIRE(r.size() == 2);
  CHECK(r[0].amount == 2500000.0);
  CHECK_FALSE(r[1].amount.has_value());
  CHECK(r[0].investor_ids == std::vector<std::string>{"I1", "I2"});
  CHECK_THROWS_AS(parse_rounds("round_id,startup_id,announced_date,stage_label,amount_usd,investor_ids\n"
                               "R1,S1,2010-05-05,seed,-5,I1\n",
                               "rounds.csv"),
                  SchemaError);
  CHECK_THROWS_AS(parse_investors("investor_id,name,type_label\nI1,x,hedge_fund\n", "investors.csv"), SchemaError);
}

TEST_CASE("integrity checks") {
  const auto onto = SectorOntology::default_ontology();
  const std::vector<RawInvestor> inv = {investor("I1")};
  const std::vector<RawStartup> st = {startup("S1", {"Software"})};

  CHECK_THROWS_AS(ValidatedDataset::create({startup("S1", {"Software"}), startup("S1", {"Apps"})}, {}, inv, onto),
                  IntegrityError);
  try {
    ValidatedDataset::create(st,
                             {round("R1", "S1", {2010, 1, 1}, "seed", {"I1"}),
                              round("R2", "S9", {2010, 1, 1}, "seed", {"I1"}),
                              round("R3", "S1", {2010, 1, 1}, "seed", {"I7"})},
                             inv, onto);
    FAIL("expected an integrity error");
  } catch (const IntegrityError& e) {
    CHECK(e.ids() == std::vector<std::string>{"R2", "R3"});
    CHECK(std::string(e.what()).find("startup S9") != std::string::npos);
    CHECK(std::string(e.what()).find("investor I7") != std::string::npos);
  }
}

TEST_CASE("unknown tags warn or fail") {
  const auto onto = SectorOntology::default_ontology();
  const std::vector<RawStartup> st = {startup("S1", {"Software", "Quantum Basket Weaving"}), startup("S2", {})};
  const std::vector<RawRound> rs = {round("R1", "S1", {2010, 1, 1}, "seed", {"I1"})};
  const std::vector<RawInvestor> inv = {investor("I1")};
  const auto ds = ValidatedDataset::create(st, rs, inv, onto);
  REQUIRE(ds.warnings().size() == 2);
  CHECK(ds.warnings()[0].find("S2") != std::string::npos);
  CHECK(ds.warnings()[1].find("Quantum Basket Weaving") != std::string::npos);
  CHECK_THROWS_AS(ValidatedDataset::create(st, rs, inv, onto, {.strict_tags = true}), ClassificationError);
}

TEST_CASE("filter_startups matches a row-scan oracle") {
  std::mt19937_64 rng(21);
  const auto onto = SectorOntology::default_ontology();
  std::vector<RawStartup> st;
  std::vector<RawRound> rs;
  std::vector<RawInvestor> inv = {investor("I1"), investor("I2")};
  const std::vector<std::string> countries = {"USA", "USA", "USA", "CAN", "GBR"};
  const std::vector<StartupStatus> statuses = {StartupStatus::Active, StartupStatus::Closed, StartupStatus::Acquired,
                                               StartupStatus::Ipo};
  std::uniform_int_distribution<int> year(1996, 2020), month(1, 12), day(1, 28), nrounds(0, 3), pick(0, 9);
  for (int i = 0; i < 400; ++i) {
    const std::string id = "S" + std::to_string(i);
    std::vector<std::string> tags;
    if (pick(rng) > 0) tags.push_back("Software");
    Date founded{year(rng), month(rng), day(rng)};
    if (pick(rng) == 0) founded = {2000, 1, 1};
    st.push_back(startup(id, tags, founded, countries[static_cast<std::size_t>(pick(rng)) % countries.size()],
                         statuses[static_cast<std::size_t>(pick(rng)) % statuses.size()]));
    for (int k = nrounds(rng); k > 0; --k)
      rs.push_back(round("R" + std::to_string(rs.size()), id, {year(rng), month(rng), day(rng)}, "seed", {"I1"}));
  }
  const auto ds = ValidatedDataset::create(st, rs, inv, onto);
  const auto kept = filter_startups(ds);

  // Oracle: scan rows directly.
  std::vector<std::string> expect;
  for (const auto& s : st) {
    bool in_window = false;
    for (const auto& r : rs)
      if (r.startup_id == s.startup_id && r.announced_date.year >= 2000 && r.announced_date.year <= 2017)
        in_window = true;
    if (s.country_code == "USA" && s.status != StartupStatus::Closed && !s.tags.empty() && in_window &&
        s.founded_date > Date{2000, 1, 1})
      expect.push_back(s.startup_id);
  }
  std::vector<std::string> got;
  for (const auto& s : kept.startups()) got.push_back(s.startup_id);
  CHECK(got == expect);
  for (const auto& r : kept.rounds()) {
    CHECK(kept.find_startup(r.startup_id) != nullptr);
    CHECK(r.announced_date.year >= 2000);
    CHECK(r.announced_date.year <= 2017);
  }

  const auto twice = filter_startups(kept);
  CHECK(twice.startups() == kept.startups());
  CHECK(twice.rounds() == kept.rounds());
  CHECK(twice.warnings() == kept.warnings());
}

TEST_CASE("filter boundary: founded on the cutoff is excluded") {
  const auto onto = SectorOntology::default_ontology();
  const auto ds = ValidatedDataset::create(
      {startup("S1", {"Software"}, {2000, 1, 1}), startup("S2", {"Software"}, {2000, 1, 2})},
      {round("R1", "S1", {2005, 1, 1}, "seed", {"I1"}), round("R2", "S2", {2005, 1, 1}, "seed", {"I1"})},
      {investor("I1")}, onto);
  const auto kept = filter_startups(ds);
  REQUIRE(kept.startups().size() == 1);
  CHECK(kept.startups()[0].startup_id == "S2");

  FilterOptions none;
  none.country = "FRA";
  const auto empty = filter_startups(ds, none);
  CHECK(empty.startups().empty());
  CHECK(std::count(empty.warnings().begin(), empty.warnings().end(), "filter retained no startups") == 1);
  const auto again = filter_startups(empty, none);
  CHECK(std::count(again.warnings().begin(), again.warnings().end(), "filter retained no startups") == 1);
}

TEST_CASE("export and reload round-trips") {
  std::mt19937_64 rng(3);
  const auto ds = random_dataset(rng, 12, 80);
  const auto dir = scratch("roundtrip");
  export_dataset(ds, dir);
  const auto back = load_dataset(DatasetPaths::in_directory(dir));
  CHECK(back.startups() == ds.startups());
  CHECK(back.rounds() == ds.rounds());
  CHECK(back.investors() == ds.investors());
  CHECK(back.ontology().parent_tags() == ds.ontology().parent_tags());

  auto paths = DatasetPaths::in_directory(dir);
  paths.ontology.clear();
  CHECK(load_dataset(paths).ontology().version() == "default-28-v1");
  std::filesystem::remove_all(dir);
}
