#include "sectorscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include <json.hpp>

#include "sectorscope/report.hpp"

namespace sectorscope::synth {

using nlohmann::ordered_json;

namespace {

void check_probability(const std::vector<double>& p, std::size_t size, const std::string& what) {
  if (p.size() != size)
    throw InvalidArgument(what + ": expected " + std::to_string(size) + " entries, got " + std::to_string(p.size()));
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0) || !std::isfinite(v)) throw InvalidArgument(what + ": negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument(what + ": entries sum to " + format_double(sum));
}

std::size_t sample_index(std::mt19937_64& rng, const std::vector<double>& weights) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = unif(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  for (std::size_t i = weights.size(); i > 0; --i)
    if (weights[i - 1] > 0) return i - 1;
  return 0;
}

std::string padded(char prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, value);
  return buf;
}

}  // namespace

double Concentration::schedule(int year) const {
  if (window.contains(year))
    return tightening * static_cast<double>(year - window.first + 1) / static_cast<double>(window.size());
  if (year > window.last && decay_years > 0)
    return tightening * std::max(0.0, 1.0 - static_cast<double>(year - window.last) / decay_years);
  return 0.0;
}

int ScenarioConfig::n_investors() const {
  int n = 0;
  for (const auto& a : archetypes) n += a.count;
  return n;
}

void ScenarioConfig::validate() const {
  const auto p = ontology.size();
  if (years.empty()) throw InvalidArgument("scenario: empty year range");
  if (archetypes.empty()) throw InvalidArgument("scenario: no archetypes");
  if (!(noise >= 0)) throw InvalidArgument("scenario: noise must be non-negative");
  if (!(distractor_rate >= 0)) throw InvalidArgument("scenario: distractor_rate must be non-negative");
  for (const auto& a : archetypes) {
    const std::string what = "archetype '" + a.name + "'";
    if (a.count < 0) throw InvalidArgument(what + ": negative count");
    if (!(a.activity_rate > 0)) throw InvalidArgument(what + ": activity_rate must be positive");
    if (!(a.heterogeneity >= 0)) throw InvalidArgument(what + ": negative heterogeneity");
    check_probability(a.sector_mixture, p, what + " sector_mixture");
    check_probability(std::vector<double>(a.stage_mixture.begin(), a.stage_mixture.end()), 4,
                      what + " stage_mixture");
    if (a.active_window.empty() || a.active_window.first < years.first || a.active_window.last > years.last)
      throw InvalidArgument(what + ": active window " + a.active_window.str() + " outside " + years.str());
  }
  if (drift) {
    check_probability(drift->target, p, "drift target");
    for (const auto& [y, m] : drift->magnitude) {
      if (!years.contains(y)) throw InvalidArgument("drift magnitude for year " + std::to_string(y) + " outside range");
      if (!(m >= 0 && m <= 1)) throw InvalidArgument("drift magnitude must lie in [0, 1]");
    }
    for (double e : drift->stage_exposure)
      if (!(e >= 0 && e <= 1)) throw InvalidArgument("drift stage exposure must lie in [0, 1]");
  }
  if (concentration) {
    check_probability(concentration->focus, p, "concentration focus");
    const auto& w = concentration->window;
    if (w.empty() || w.first < years.first || w.last > years.last)
      throw InvalidArgument("concentration window " + w.str() + " outside " + years.str());
    if (!(concentration->tightening >= 0 && concentration->tightening <= 1))
      throw InvalidArgument("concentration tightening must lie in [0, 1]");
  }
}

std::string ScenarioConfig::to_json() const {
  ordered_json doc;
  doc["name"] = name;
  doc["years"] = years.str();
  doc["seed"] = seed;
  doc["noise"] = noise;
  doc["distractor_rate"] = distractor_rate;
  doc["ontology_version"] = ontology.version();
  doc["archetypes"] = ordered_json::array();
  for (const auto& a : archetypes) {
    ordered_json j;
    j["name"] = a.name;
    j["type"] = std::string(to_string(a.type));
    j["count"] = a.count;
    j["sector_mixture"] = a.sector_mixture;
    j["activity_rate"] = a.activity_rate;
    j["active_window"] = a.active_window.str();
    j["stage_mixture"] = a.stage_mixture;
    j["heterogeneity"] = a.heterogeneity;
    j["drift_exposure"] = a.drift_exposure;
    j["concentration_exposure"] = a.concentration_exposure;
    j["cohort"] = a.cohort;
    doc["archetypes"].push_back(std::move(j));
  }
  if (drift) {
    ordered_json d;
    d["target"] = drift->target;
    ordered_json mag = ordered_json::object();
    for (const auto& [y, m] : drift->magnitude) mag[std::to_string(y)] = m;
    d["magnitude"] = std::move(mag);
    d["stage_exposure"] = drift->stage_exposure;
    if (drift->turn_year) d["turn_year"] = *drift->turn_year;
    doc["drift"] = std::move(d);
  }
  if (concentration) {
    ordered_json c;
    c["window"] = concentration->window.str();
    c["tightening"] = concentration->tightening;
    c["decay_years"] = concentration->decay_years;
    c["focus"] = concentration->focus;
    doc["concentration"] = std::move(c);
  }
  return doc.dump(2) + "\n";
}

ScenarioConfig ScenarioConfig::parse_json(std::string_view text) {
  ScenarioConfig cfg;
  try {
    const auto doc = nlohmann::json::parse(text);
    cfg.name = doc.value("name", cfg.name);
    if (doc.contains("years")) cfg.years = YearRange::parse(doc["years"].get<std::string>());
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.noise = doc.value("noise", cfg.noise);
    cfg.distractor_rate = doc.value("distractor_rate", cfg.distractor_rate);
    for (const auto& j : doc.at("archetypes")) {
      Archetype a;
      a.name = j.value("name", std::string("investor"));
      a.type = parse_investor_type(j.value("type", std::string("vc")));
      a.count = j.at("count").get<int>();
      a.sector_mixture = j.at("sector_mixture").get<std::vector<double>>();
      a.activity_rate = j.at("activity_rate").get<double>();
      a.active_window = j.contains("active_window") ? YearRange::parse(j["active_window"].get<std::string>()) : cfg.years;
      if (j.contains("stage_mixture")) a.stage_mixture = j["stage_mixture"].get<std::array<double, 4>>();
      a.heterogeneity = j.value("heterogeneity", 0.0);
      a.drift_exposure = j.value("drift_exposure", 1.0);
      a.concentration_exposure = j.value("concentration_exposure", 1.0);
      a.cohort = j.value("cohort", false);
      cfg.archetypes.push_back(std::move(a));
    }
    if (doc.contains("drift")) {
      const auto& j = doc["drift"];
      Drift d;
      d.target = j.at("target").get<std::vector<double>>();
      for (const auto& [y, m] : j.at("magnitude").items()) d.magnitude[std::stoi(y)] = m.get<double>();
      if (j.contains("stage_exposure")) d.stage_exposure = j["stage_exposure"].get<std::array<double, 4>>();
      if (j.contains("turn_year")) d.turn_year = j["turn_year"].get<int>();
      cfg.drift = std::move(d);
    }
    if (doc.contains("concentration")) {
      const auto& j = doc["concentration"];
      Concentration c;
      c.window = YearRange::parse(j.at("window").get<std::string>());
      c.tightening = j.value("tightening", c.tightening);
      c.decay_years = j.value("decay_years", c.decay_years);
      c.focus = j.at("focus").get<std::vector<double>>();
      cfg.concentration = std::move(c);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("scenario json: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string PlantedTruth::to_json() const {
  ordered_json doc;
  doc["scenario"] = scenario;
  if (turn_year) doc["turn_year"] = *turn_year;
  if (concentration_peak_year) doc["concentration_peak_year"] = *concentration_peak_year;
  if (activation_year) doc["activation_year"] = *activation_year;
  doc["cohort"] = cohort;
  ordered_json drift = ordered_json::object();
  for (const auto& [y, m] : drift_path) drift[std::to_string(y)] = m;
  doc["drift_path"] = std::move(drift);
  ordered_json conc = ordered_json::object();
  for (const auto& [y, t] : concentration_schedule) conc[std::to_string(y)] = t;
  doc["concentration_schedule"] = std::move(conc);
  ordered_json arch = ordered_json::object();
  for (const auto& [id, a] : investor_archetype) arch[id] = a;
  doc["investor_archetype"] = std::move(arch);
  if (cp) {
    ordered_json j;
    j["rank"] = cp->rank;
    j["weights"] = std::vector<double>(cp->weights.data(), cp->weights.data() + cp->weights.size());
    doc["cp"] = std::move(j);
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

CpSample generate_cp_tensor(int n, int s, int k, int rank, double noise, std::uint64_t seed) {
  if (n < 1 || s < 1 || k < 1) throw InvalidArgument("generate_cp_tensor: dimensions must be positive");
  if (rank < 1 || rank > std::min(n, s * k)) throw InvalidArgument("generate_cp_tensor: rank outside [1, min(N, S*K)]");
  if (!(noise >= 0)) throw InvalidArgument("generate_cp_tensor: noise must be non-negative");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(1.0, 1.5);
  auto draw = [&](int rows) {
    Eigen::MatrixXd m(rows, rank);
    for (int c = 0; c < rank; ++c)
      for (int i = 0; i < rows; ++i) m(i, c) = gauss(rng);
    return m;
  };
  Eigen::MatrixXd a = draw(n), b = draw(s), c = draw(k);
  Eigen::VectorXd w(rank);
  for (int r = 0; r < rank; ++r) w[r] = unif(rng);
  std::sort(w.data(), w.data() + rank, std::greater<>());

  CPModel planted = canonicalize(a, b, c, w);
  double clean2 = 0;
  for (const auto& slice : reconstruct(planted)) clean2 += slice.squaredNorm();
  planted.weights *= std::sqrt(static_cast<double>(n) * s * k / clean2);

  CpSample out;
  out.tensor = StrategyTensor::zeros(n, s, k);
  const auto clean = reconstruct(planted);
  for (int y = 0; y < k; ++y) {
    auto& slice = out.tensor.slices[static_cast<std::size_t>(y)];
    slice = clean[static_cast<std::size_t>(y)];
    if (noise > 0)
      for (int j = 0; j < s; ++j)
        for (int i = 0; i < n; ++i) slice(i, j) += noise * gauss(rng);
  }
  planted.seed = seed;
  out.truth.scenario = "cp_tensor";
  out.truth.cp = std::move(planted);
  return out;
}

// ---------------------------------------------------------------------------

ValidatedDataset Ecosystem::dataset() const {
  return ValidatedDataset::create(startups, rounds, investors, ontology);
}

void Ecosystem::write(const std::filesystem::path& dir) const {
  const auto paths = DatasetPaths::in_directory(dir);
  write_file_atomic(paths.startups, startups_csv(startups));
  write_file_atomic(paths.rounds, rounds_csv(rounds));
  write_file_atomic(paths.investors, investors_csv(investors));
  write_file_atomic(paths.ontology, ontology.to_json());
  write_file_atomic(dir / "truth.json", truth.to_json());
  write_file_atomic(dir / "scenario.json", config.to_json());
}

namespace {

const char* stage_label(StageClass stage, std::mt19937_64& rng) {
  static constexpr const char* kLater[] = {"series_c", "series_d", "series_e", "series_f"};
  switch (stage) {
    case StageClass::Seed: return "seed";
    case StageClass::SeriesA: return "series_a";
    case StageClass::SeriesB: return "series_b";
    case StageClass::SeriesCPlus: return kLater[std::uniform_int_distribution<int>(0, 3)(rng)];
  }
  return "seed";
}

double median_amount(StageClass stage) {
  switch (stage) {
    case StageClass::Seed: return 5e5;
    case StageClass::SeriesA: return 3e6;
    case StageClass::SeriesB: return 1.2e7;
    case StageClass::SeriesCPlus: return 3e7;
  }
  return 1e6;
}

Date random_date(std::mt19937_64& rng, int year) {
  return {year, std::uniform_int_distribution<int>(1, 12)(rng), std::uniform_int_distribution<int>(1, 28)(rng)};
}

// Child tags resolving to exactly one parent, by parent index.
std::vector<std::vector<std::string>> single_parent_aliases(const SectorOntology& ontology) {
  std::vector<std::vector<std::string>> out(ontology.size());
  for (const auto& [child, ids] : ontology.child_map())
    if (ids.size() == 1 && child != ontology.parent(ids[0])) out[ids[0]].push_back(child);
  return out;
}

}  // namespace

Ecosystem generate_ecosystem(const ScenarioConfig& config) {
  config.validate();
  const std::size_t p = config.ontology.size();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto aliases = single_parent_aliases(config.ontology);

  Ecosystem eco;
  eco.ontology = config.ontology;
  eco.config = config;
  eco.truth.scenario = config.name;

  struct Member {
    const Archetype* archetype;
    std::vector<double> mixture;
  };
  std::vector<Member> members;
  for (const auto& a : config.archetypes) {
    for (int i = 0; i < a.count; ++i) {
      const auto id = padded('I', eco.investors.size() + 1, 5);
      eco.investors.push_back({id, a.name + " " + std::to_string(i + 1), a.type});
      eco.truth.investor_archetype[id] = a.name;
      if (a.cohort) eco.truth.cohort.push_back(id);
      std::vector<double> mix = a.sector_mixture;
      if (a.heterogeneity > 0) {
        double total = 0;
        for (std::size_t k = 0; k < p; ++k) {
          mix[k] = a.sector_mixture[k] > 0
                       ? std::gamma_distribution<double>(a.heterogeneity * a.sector_mixture[k], 1.0)(rng)
                       : 0.0;
          total += mix[k];
        }
        if (total > 0)
          for (auto& v : mix) v /= total;
        else
          mix = a.sector_mixture;
      }
      members.push_back({&a, std::move(mix)});
    }
  }
  for (const auto& a : config.archetypes)
    if (a.cohort && a.count > 0)
      eco.truth.activation_year = std::min(eco.truth.activation_year.value_or(a.active_window.first),
                                           a.active_window.first);

  std::vector<double> jitter(p, 1.0), mix(p);
  for (int year = config.years.first; year <= config.years.last; ++year) {
    const double drift = config.drift && config.drift->magnitude.contains(year) ? config.drift->magnitude.at(year) : 0.0;
    const double tight = config.concentration ? config.concentration->schedule(year) : 0.0;
    if (config.drift) eco.truth.drift_path[year] = drift;
    if (config.concentration) eco.truth.concentration_schedule[year] = tight;

    for (std::size_t m = 0; m < members.size(); ++m) {
      const Archetype& a = *members[m].archetype;
      if (!a.active_window.contains(year)) continue;
      const int count = std::poisson_distribution<int>(a.activity_rate)(rng);
      if (count == 0) continue;
      if (config.noise > 0)
        for (auto& j : jitter) j = std::exp(config.noise * gauss(rng));

      for (int r = 0; r < count; ++r) {
        const auto stage = static_cast<StageClass>(
            sample_index(rng, std::vector<double>(a.stage_mixture.begin(), a.stage_mixture.end())));
        const double t = tight * a.concentration_exposure;
        const double e = drift * a.drift_exposure *
                         (config.drift ? config.drift->stage_exposure[static_cast<std::size_t>(stage)] : 0.0);
        for (std::size_t k = 0; k < p; ++k) {
          double v = members[m].mixture[k];
          if (config.concentration) v = (1 - t) * v + t * config.concentration->focus[k];
          if (config.drift) v = (1 - e) * v + e * config.drift->target[k];
          mix[k] = v * jitter[k];
        }
        const std::size_t sector = sample_index(rng, mix);

        RawStartup startup;
        startup.startup_id = padded('S', eco.startups.size() + 1, 6);
        startup.name = "Startup " + std::to_string(eco.startups.size() + 1);
        startup.country_code = "USA";
        const double st = unif(rng);
        startup.status = st < 0.85 ? StartupStatus::Active : st < 0.97 ? StartupStatus::Acquired : StartupStatus::Ipo;
        startup.founded_date = random_date(rng, year - std::uniform_int_distribution<int>(0, 3)(rng));
        if (startup.founded_date <= Date{2000, 1, 1}) startup.founded_date = {2000, 1, 2};
        const auto& alias = aliases[sector];
        if (!alias.empty() && unif(rng) < 0.3)
          startup.tags = {alias[std::uniform_int_distribution<std::size_t>(0, alias.size() - 1)(rng)]};
        else
          startup.tags = {config.ontology.parent(sector)};

        RawRound round;
        round.round_id = padded('R', eco.rounds.size() + 1, 7);
        round.startup_id = startup.startup_id;
        round.announced_date = std::max(random_date(rng, year), startup.founded_date);
        round.stage_label = stage_label(stage, rng);
        round.amount = std::round(median_amount(stage) * std::exp(0.6 * gauss(rng)));
        if (unif(rng) < 0.05) round.amount.reset();
        round.investor_ids = {eco.investors[m].investor_id};

        eco.startups.push_back(std::move(startup));
        eco.rounds.push_back(std::move(round));
      }
    }
  }

  const auto distractors = static_cast<std::size_t>(std::llround(config.distractor_rate * eco.startups.size()));
  for (std::size_t d = 0; d < distractors && !eco.investors.empty(); ++d) {
    const int year = std::uniform_int_distribution<int>(config.years.first, config.years.last)(rng);
    RawStartup startup;
    startup.startup_id = padded('S', eco.startups.size() + 1, 6);
    startup.name = "Startup " + std::to_string(eco.startups.size() + 1);
    startup.country_code = "USA";
    startup.status = StartupStatus::Active;
    startup.founded_date = random_date(rng, year);
    switch (d % 4) {
      case 0: startup.status = StartupStatus::Closed; break;
      case 1: startup.country_code = "CAN"; break;
      case 2: startup.founded_date = {1999, 12, 31}; break;
      case 3: startup.founded_date = {2000, 1, 1}; break;
    }
    startup.tags = {config.ontology.parent(std::uniform_int_distribution<std::size_t>(0, p - 1)(rng))};
    RawRound round;
    round.round_id = padded('R', eco.rounds.size() + 1, 7);
    round.startup_id = startup.startup_id;
    round.announced_date = std::max(random_date(rng, year), startup.founded_date);
    round.stage_label = "seed";
    round.amount = 1e5;
    round.investor_ids = {
        eco.investors[std::uniform_int_distribution<std::size_t>(0, eco.investors.size() - 1)(rng)].investor_id};
    eco.startups.push_back(std::move(startup));
    eco.rounds.push_back(std::move(round));
  }

  if (config.drift) eco.truth.turn_year = config.drift->turn_year;
  if (config.concentration) eco.truth.concentration_peak_year = config.concentration->window.last;
  return eco;
}

// ---------------------------------------------------------------------------

std::vector<double> mixture(const SectorOntology& ontology, const std::map<std::string, double>& weights) {
  std::vector<double> out(ontology.size(), 0.0);
  double total = 0;
  for (const auto& [name, w] : weights) {
    const auto idx = ontology.index_of(name);
    if (!idx) throw InvalidArgument("mixture: unknown sector '" + name + "'");
    out[*idx] += w;
    total += w;
  }
  if (!(total > 0)) throw InvalidArgument("mixture: weights sum to zero");
  for (auto& v : out) v /= total;
  return out;
}

namespace {

std::vector<double> blend(const std::vector<double>& x, const std::vector<double>& y, double t) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (1 - t) * x[i] + t * y[i];
  return out;
}

std::vector<double> uniform_except(const SectorOntology& o, const std::vector<std::string>& skip) {
  std::map<std::string, double> w;
  for (const auto& name : o.parent_tags())
    if (std::find(skip.begin(), skip.end(), name) == skip.end()) w[name] = 1.0;
  return mixture(o, w);
}

// Broad portfolio leaning toward capital-intensive, technical sectors.
std::vector<double> deeptech_base(const SectorOntology& o) {
  const auto tech = mixture(o, {{"Energy", 0.2},
                                {"Manufacturing", 0.2},
                                {"Data and Analytics", 0.2},
                                {"Privacy and Security", 0.15},
                                {"Information Technology", 0.15},
                                {"Science and Engineering", 0.1}});
  return blend(uniform_except(o, {"Health Care"}), tech, 0.5);
}

// Consumer-oriented, low-tech zone.
std::vector<double> consumer_zone(const SectorOntology& o) {
  return mixture(o, {{"Commerce and Shopping", 0.4},
                     {"Messaging and Telecommunications", 0.25},
                     {"Content and Publishing", 0.2},
                     {"Media and Entertainment", 0.15}});
}

Archetype make(std::string name, InvestorType type, int count, std::vector<double> mix, double rate,
               std::array<double, 4> stages, double heterogeneity, YearRange window = {2000, 2017}) {
  Archetype a;
  a.name = std::move(name);
  a.type = type;
  a.count = count;
  a.sector_mixture = std::move(mix);
  a.activity_rate = rate;
  a.stage_mixture = stages;
  a.heterogeneity = heterogeneity;
  a.active_window = window;
  return a;
}

}  // namespace

std::vector<std::string> preset_names() { return {"uniform", "drift", "convergence", "concentration", "emergence"}; }

ScenarioConfig preset(std::string_view name, std::uint64_t seed) {
  ScenarioConfig c;
  c.name = std::string(name);
  c.seed = seed;
  c.distractor_rate = 0.02;
  const auto& o = c.ontology;
  const auto base = deeptech_base(o);
  const auto zone = consumer_zone(o);

  if (name == "uniform") {
    c.archetypes.push_back(make("Fund", InvestorType::Vc, 200, uniform_except(o, {}), 5, {0.25, 0.25, 0.25, 0.25}, 0));
  } else if (name == "drift") {
    // Monotone drift of every investor toward the consumer zone.
    c.archetypes.push_back(make("Angel", InvestorType::Angel, 200, base, 4, {1, 0, 0, 0}, 20));
    c.archetypes.push_back(make("Fund", InvestorType::Vc, 100, base, 6, {0, 0.4, 0.3, 0.3}, 20));
    Drift d;
    d.target = zone;
    for (int y = c.years.first; y <= c.years.last; ++y)
      d.magnitude[y] = 0.9 * (y - c.years.first) / static_cast<double>(c.years.size() - 1);
    c.drift = d;
  } else if (name == "convergence") {
    // Convergence toward the accelerator zone until 2014, then a shift away;
    // later stages follow the drift less.
    auto acc = make("Accelerator", InvestorType::Accelerator, 30, zone, 10, {1, 0, 0, 0}, 50);
    acc.drift_exposure = 0;
    acc.cohort = true;
    c.archetypes.push_back(acc);
    c.archetypes.push_back(make("Angel", InvestorType::Angel, 150, base, 3, {1, 0, 0, 0}, 20));
    c.archetypes.push_back(make("Micro Fund", InvestorType::MicroVc, 60, base, 5, {0.5, 0.5, 0, 0}, 20));
    c.archetypes.push_back(make("Venture Partners", InvestorType::Vc, 100, base, 6, {0, 0.35, 0.35, 0.3}, 20));
    c.archetypes.push_back(make("Corporate Ventures", InvestorType::CorporateVc, 30, base, 4, {0, 0, 0.5, 0.5}, 20));
    Drift d;
    d.target = zone;
    d.turn_year = 2014;
    for (int y = c.years.first; y <= c.years.last; ++y)
      d.magnitude[y] = y <= 2014 ? 0.85 * (y - c.years.first) / (2014.0 - c.years.first)
                                 : std::max(0.0, 0.85 - 0.2 * (y - 2014));
    d.stage_exposure = {1.0, 0.8, 0.6, 0.4};
    c.drift = d;
  } else if (name == "concentration") {
    // Diverse portfolios that tighten sharply during 2010-2013.
    c.archetypes.push_back(make("Angel", InvestorType::Angel, 200, base, 2, {1, 0, 0, 0}, 3));
    c.archetypes.push_back(make("Micro Fund", InvestorType::MicroVc, 80, base, 4, {0.5, 0.5, 0, 0}, 3));
    c.archetypes.push_back(make("Venture Partners", InvestorType::Vc, 120, base, 5, {0, 0.35, 0.35, 0.3}, 3));
    Concentration k;
    k.window = {2010, 2013};
    k.tightening = 0.85;
    k.decay_years = 2;
    k.focus = mixture(o, {{"Commerce and Shopping", 0.7}, {"Messaging and Telecommunications", 0.3}});
    c.concentration = k;
  } else if (name == "emergence") {
    // An accelerator cohort appears in 2006 next to stage-agnostic funds, angels
    // and an isolated health-care block.
    auto acc = make("Accelerator", InvestorType::Accelerator, 15, zone, 10, {1, 0, 0, 0}, 50, {2006, 2017});
    acc.cohort = true;
    c.archetypes.push_back(acc);
    c.archetypes.push_back(make("Venture Partners", InvestorType::Vc, 80, base, 4, {0.1, 0.3, 0.3, 0.3}, 20));
    c.archetypes.push_back(make("Angel", InvestorType::Angel, 200, base, 1.5, {1, 0, 0, 0}, 20));
    c.archetypes.push_back(
        make("Life Sciences", InvestorType::Vc, 20, mixture(o, {{"Health Care", 1.0}}), 3, {0, 0.4, 0.3, 0.3}, 0));
  } else {
    throw InvalidArgument("unknown scenario preset '" + std::string(name) + "'");
  }
  c.validate();
  return c;
}

}  // namespace sectorscope::synth
