#include <doctest.h>

#include <cmath>

#include "sectorscope/report.hpp"
#include "sectorscope/synth.hpp"

using namespace sectorscope;
using namespace sectorscope::synth;

TEST_CASE("presets validate and generate deterministically") {
  for (const auto& name : preset_names()) {
    const auto cfg = preset(name, 5);
    CHECK_NOTHROW(cfg.validate());
    const auto a = generate_ecosystem(cfg);
    const auto b = generate_ecosystem(cfg);
    CHECK(rounds_csv(a.rounds) == rounds_csv(b.rounds));
    CHECK(startups_csv(a.startups) == startups_csv(b.startups));
    CHECK(a.truth.to_json() == b.truth.to_json());
    CHECK(static_cast<int>(a.investors.size()) == cfg.n_investors());
    CHECK_NOTHROW(a.dataset());
  }
  const auto c1 = generate_ecosystem(preset("drift", 1));
  const auto c2 = generate_ecosystem(preset("drift", 2));
  CHECK(rounds_csv(c1.rounds) != rounds_csv(c2.rounds));
  CHECK_THROWS_AS(preset("nope", 1), InvalidArgument);
}

TEST_CASE("distractors are exactly the rows the default filter drops") {
  auto cfg = preset("uniform", 3);
  cfg.distractor_rate = 0.05;
  const auto eco = generate_ecosystem(cfg);
  const auto ds = eco.dataset();
  const auto kept = filter_startups(ds);
  std::size_t distractors = 0;
  for (const auto& s : eco.startups)
    if (s.country_code != "USA" || s.status == StartupStatus::Closed || s.founded_date <= Date{2000, 1, 1})
      ++distractors;
  CHECK(distractors > 0);
  CHECK(kept.startups().size() + distractors == eco.startups.size());
  for (const auto& r : eco.rounds) {
    const auto* s = ds.find_startup(r.startup_id);
    REQUIRE(s != nullptr);
    CHECK(r.announced_date >= s->founded_date);
  }
}

TEST_CASE("planted truth records schedules") {
  const auto conv = generate_ecosystem(preset("convergence", 1));
  REQUIRE(conv.truth.turn_year.has_value());
  CHECK(*conv.truth.turn_year == 2014);
  CHECK(conv.truth.drift_path.at(2014) == doctest::Approx(0.85));
  CHECK(conv.truth.drift_path.at(2000) == 0.0);
  CHECK(conv.truth.cohort.size() == 30);
  for (const auto& id : conv.truth.cohort) CHECK(conv.truth.investor_archetype.at(id) == "Accelerator");

  const auto conc = preset("concentration", 1);
  REQUIRE(conc.concentration.has_value());
  CHECK(conc.concentration->schedule(2009) == 0.0);
  CHECK(conc.concentration->schedule(2013) == doctest::Approx(0.85));
  CHECK(conc.concentration->schedule(2010) < conc.concentration->schedule(2012));
  CHECK(conc.concentration->schedule(2014) == doctest::Approx(0.425));
  CHECK(conc.concentration->schedule(2016) == 0.0);

  const auto em = generate_ecosystem(preset("emergence", 1));
  CHECK(em.truth.activation_year == 2006);
  CHECK(em.truth.cohort.size() == 15);
}

TEST_CASE("scenario json round-trips") {
  const auto cfg = preset("convergence", 9);
  const auto back = ScenarioConfig::parse_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
  const auto a = generate_ecosystem(cfg);
  const auto b = generate_ecosystem(back);
  CHECK(rounds_csv(a.rounds) == rounds_csv(b.rounds));
  CHECK_THROWS_AS(ScenarioConfig::parse_json("{\"archetypes\": 4}"), InvalidArgument);
}

TEST_CASE("scenario validation rejects malformed configs") {
  auto cfg = preset("uniform", 1);
  cfg.archetypes[0].sector_mixture[0] += 0.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = preset("uniform", 1);
  cfg.archetypes[0].active_window = {1995, 2005};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = preset("uniform", 1);
  cfg.archetypes[0].activity_rate = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = preset("uniform", 1);
  cfg.archetypes[0].stage_mixture = {0.5, 0.2, 0, 0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = preset("concentration", 1);
  cfg.concentration->window = {2015, 2019};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK_THROWS_AS(mixture(SectorOntology::default_ontology(), {{"Basket Weaving", 1.0}}), InvalidArgument);
}

TEST_CASE("planted CP tensors") {
  const auto s = generate_cp_tensor(50, 10, 6, 3, 0.0, 4);
  REQUIRE(s.truth.cp.has_value());
  const auto& cp = *s.truth.cp;
  CHECK(cp.rank == 3);
  const double rms = std::sqrt(s.tensor.squared_norm() / (50.0 * 10 * 6));
  CHECK(rms == doctest::Approx(1.0).epsilon(1e-9));
  for (int r = 0; r + 1 < 3; ++r) CHECK(cp.weights[r] >= cp.weights[r + 1]);
  CHECK(reconstruction_error(cp, s.tensor) < 1e-12);

  const auto noisy = generate_cp_tensor(50, 10, 6, 3, 0.2, 4);
  CHECK(reconstruction_error(*noisy.truth.cp, noisy.tensor) == doctest::Approx(0.2).epsilon(0.1));
  CHECK_THROWS_AS(generate_cp_tensor(2, 3, 3, 5, 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_cp_tensor(5, 3, 3, 2, -1.0, 1), InvalidArgument);
}

TEST_CASE("ecosystem write produces loadable files") {
  const auto dir = std::filesystem::temp_directory_path() / "sectorscope_test_synth_write";
  std::filesystem::remove_all(dir);
  const auto eco = generate_ecosystem(preset("drift", 2));
  eco.write(dir);
  const auto ds = load_dataset(DatasetPaths::in_directory(dir));
  CHECK(ds.rounds() == eco.rounds);
  CHECK(std::filesystem::exists(dir / "truth.json"));
  CHECK(ScenarioConfig::parse_json(read_file(dir / "scenario.json")).to_json() == eco.config.to_json());
  std::filesystem::remove_all(dir);
}
