#include "sectorscope/pipeline.hpp"

#include <algorithm>
#include <map>

#include "sectorscope/csv.hpp"
#include "sectorscope/pca.hpp"
#include "sectorscope/profile.hpp"
#include "sectorscope/report.hpp"
#include "sectorscope/svg.hpp"
#include "sectorscope/synth.hpp"
#include "sectorscope/tca.hpp"

#ifndef SECTORSCOPE_VERSION
#define SECTORSCOPE_VERSION "unknown"
#endif

namespace sectorscope {

using nlohmann::ordered_json;

void PipelineConfig::validate(std::string_view command) const {
  if (std::find(pipeline_commands().begin(), pipeline_commands().end(), command) == pipeline_commands().end())
    throw InvalidArgument("unknown command '" + std::string(command) + "'");
  if (years.empty()) throw InvalidArgument("--years: empty range");
  if (pca_dim < 2) throw InvalidArgument("--pca-dim must be at least 2");
  if (r_min < 1 || r_max < r_min) throw InvalidArgument("--r-range: need 1 <= min <= max");
  if (restarts < 1) throw InvalidArgument("--restarts must be positive");
  if (!(tol > 0)) throw InvalidArgument("--tol must be positive");
  if (max_iter < 1) throw InvalidArgument("--max-iter must be positive");
  if (!(similarity_threshold >= 0 && similarity_threshold <= 1))
    throw InvalidArgument("--similarity must lie in [0, 1]");
  if (grid.x_bins < 2 || grid.y_bins < 2) throw InvalidArgument("--grid needs at least 2 bins per axis");
  if (top_k < 1) throw InvalidArgument("--top must be positive");

  if (command == "synth") {
    if (scenario == "cp") {
      if (cp_rank < 1 || cp_investors < cp_rank) throw InvalidArgument("--cp-rank/--cp-investors out of range");
      if (!(noise >= 0)) throw InvalidArgument("--noise must be non-negative");
    } else {
      const auto names = synth::preset_names();
      if (std::find(names.begin(), names.end(), scenario) == names.end())
        throw InvalidArgument("unknown scenario '" + scenario + "'");
    }
    return;
  }
  if (command == "tca" && tensor) {
    if (!std::filesystem::is_regular_file(*tensor)) throw InvalidArgument("tensor file not found: " + tensor->string());
    return;
  }
  for (const auto* p : {&inputs.startups, &inputs.rounds, &inputs.investors})
    if (p->empty() || !std::filesystem::is_regular_file(*p))
      throw InvalidArgument("input file not found: " + (p->empty() ? std::string("<unset>") : p->string()));
  if (!inputs.ontology.empty() && !std::filesystem::is_regular_file(inputs.ontology))
    throw InvalidArgument("ontology file not found: " + inputs.ontology.string());
}

ordered_json PipelineConfig::to_json() const {
  ordered_json j;
  j["startups"] = inputs.startups.string();
  j["rounds"] = inputs.rounds.string();
  j["investors"] = inputs.investors.string();
  j["ontology"] = inputs.ontology.empty() ? std::string("default") : inputs.ontology.string();
  if (tensor) j["tensor"] = tensor->string();
  j["years"] = years.str();
  j["country"] = country;
  j["exclude_sectors"] = std::vector<std::string>(exclude_sectors.begin(), exclude_sectors.end());
  j["stage"] = stage ? std::string(to_string(*stage)) : std::string("all");
  j["pca_dim"] = pca_dim;
  j["refit_per_stage"] = refit_per_stage;
  j["r_range"] = std::to_string(r_min) + ":" + std::to_string(r_max);
  j["restarts"] = restarts;
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  j["similarity_threshold"] = similarity_threshold;
  j["seed"] = seed;
  j["top_k"] = top_k;
  j["grid"] = std::to_string(grid.x_bins) + "x" + std::to_string(grid.y_bins);
  j["out"] = out.string();
  j["strict_tags"] = strict_tags;
  j["scenario"] = scenario;
  if (scenario == "cp") {
    j["cp_rank"] = cp_rank;
    j["cp_investors"] = cp_investors;
    j["noise"] = noise;
  }
  return j;
}

namespace {

class Run {
 public:
  Run(const PipelineConfig& config) : cfg_(config) {}

  void emit(const std::string& name, std::string_view content) {
    write_file_atomic(cfg_.out / name, content);
    if (std::find(summary_.artifacts.begin(), summary_.artifacts.end(), name) == summary_.artifacts.end())
      summary_.artifacts.push_back(name);
  }
  void warn(std::string message) { summary_.warnings.push_back(std::move(message)); }
  ordered_json& results() { return summary_.results; }

  const ValidatedDataset& raw() {
    if (!raw_) {
      LoadOptions lo;
      lo.strict_tags = cfg_.strict_tags;
      raw_ = load_dataset(cfg_.inputs, lo);
      for (const auto& w : raw_->warnings()) warn(w);
    }
    return *raw_;
  }

  const ValidatedDataset& data() {
    if (!filtered_) {
      FilterOptions fo;
      fo.country = cfg_.country;
      fo.round_years = cfg_.years;
      filtered_ = filter_startups(raw(), fo);
      for (const auto& w : filtered_->warnings())
        if (std::find(summary_.warnings.begin(), summary_.warnings.end(), w) == summary_.warnings.end()) warn(w);
    }
    return *filtered_;
  }

  // Geometric profiles: configured exclusions dropped, unfiltered plus per stage.
  const ProfileSet& table() {
    if (!table_) {
      auto o = ProfileOptions::geometric(cfg_.years);
      o.exclude_sectors = cfg_.exclude_sectors;
      table_ = build_profile_table(data(), o);
      if (table_->unclassified_rounds)
        warn(std::to_string(table_->unclassified_rounds) + " round participations without a parent tag");
      if (table_->unstaged_rounds)
        warn(std::to_string(table_->unstaged_rounds) + " round participations with an unclassified stage");
    }
    return *table_;
  }

  std::vector<InvestorYearProfile> unfiltered() {
    std::vector<InvestorYearProfile> out;
    for (const auto& p : table().profiles)
      if (!p.stage) out.push_back(p);
    return out;
  }

  std::vector<std::optional<StageClass>> stages() const {
    if (cfg_.stage) return {cfg_.stage};
    std::vector<std::optional<StageClass>> out{std::nullopt};
    for (auto s : kAllStages) out.emplace_back(s);
    return out;
  }

  const PCAModel& plane() {
    if (!plane_) {
      const auto profiles = unfiltered();
      if (profiles.size() < 2) throw NumericError("fewer than 2 investor-year profiles to fit the plane");
      plane_ = fit_share_pca(profiles, cfg_.pca_dim, table().sectors);
    }
    return *plane_;
  }

  void validate();
  void profiles();
  void pca();
  void tca();
  void distances();
  void spread();
  void synth();

  void manifest(std::string_view command) {
    ordered_json m;
    m["tool"] = "sectorscope";
    m["version"] = SECTORSCOPE_VERSION;
    m["command"] = std::string(command);
    m["seed"] = cfg_.seed;
    m["config"] = cfg_.to_json();
    ordered_json inputs = ordered_json::object();
    auto digest = [&](const char* key, const std::filesystem::path& p) {
      if (!p.empty() && std::filesystem::is_regular_file(p))
        inputs[key] = {{"path", p.string()}, {"sha256", sha256_file(p)}};
    };
    if (command != "synth") {
      if (cfg_.tensor && command == "tca") {
        digest("tensor", *cfg_.tensor);
      } else {
        digest("startups", cfg_.inputs.startups);
        digest("rounds", cfg_.inputs.rounds);
        digest("investors", cfg_.inputs.investors);
        digest("ontology", cfg_.inputs.ontology);
      }
    }
    m["inputs"] = std::move(inputs);
    m["artifacts"] = summary_.artifacts;
    m["results"] = summary_.results;
    m["warnings"] = summary_.warnings;
    write_file_atomic(cfg_.out / "manifest.json", m.dump(2) + "\n");
  }

  RunSummary take() { return std::move(summary_); }

 private:
  const PipelineConfig& cfg_;
  RunSummary summary_;
  std::optional<ValidatedDataset> raw_;
  std::optional<ValidatedDataset> filtered_;
  std::optional<ProfileSet> table_;
  std::optional<PCAModel> plane_;
};

ordered_json counts_json(const DatasetCounts& c) {
  return {{"startups", c.startups},   {"rounds", c.rounds},           {"investors", c.investors},
          {"participations", c.participations}, {"parent_tags", c.parent_tags}};
}

std::string stage_name(const std::optional<StageClass>& s) { return s ? std::string(to_string(*s)) : "all"; }

void Run::validate() {
  const auto raw_counts = raw().counts();
  const auto kept = data().counts();
  ordered_json report;
  report["raw"] = counts_json(raw_counts);
  report["filtered"] = counts_json(kept);
  report["warnings"] = summary_.warnings;
  emit("validation.json", report.dump(2) + "\n");
  results()["validation"] = {{"raw", counts_json(raw_counts)}, {"filtered", counts_json(kept)}};
}

void Run::profiles() {
  if (cfg_.stage) {
    auto o = ProfileOptions::geometric(cfg_.years);
    o.exclude_sectors = cfg_.exclude_sectors;
    o.stage_filter = cfg_.stage;
    emit("profiles.csv", profiles_csv(build_profiles(data(), o)));
  } else {
    emit("profiles.csv", profiles_csv(table()));
  }
  results()["profiles"] = {{"count", table().profiles.size()}, {"dimension", table().dimension()}};
}

void Run::pca() {
  const auto& model = plane();
  {
    std::vector<std::string> header{"tag"};
    for (Eigen::Index d = 0; d < model.dimension(); ++d) header.push_back("axis" + std::to_string(d + 1));
    csv::Writer w(header);
    for (Eigen::Index j = 0; j < model.input_dimension(); ++j) {
      std::vector<std::string> row{table().sectors[static_cast<std::size_t>(j)]};
      for (Eigen::Index d = 0; d < model.dimension(); ++d) row.push_back(format_double(model.axes(d, j)));
      w.add(row);
    }
    emit("pca_loadings.csv", w.str());
  }

  csv::Writer w({"year", "stage", "x", "y", "sx", "sy"});
  std::vector<svg::Series> series;
  ordered_json per_stage = ordered_json::object();
  for (const auto& stage : stages()) {
    std::vector<InvestorYearProfile> subset;
    for (const auto& p : table().profiles)
      if (p.stage == stage) subset.push_back(p);
    if (subset.empty()) {
      warn("no profiles for stage " + stage_name(stage));
      continue;
    }
    const PCAModel* m = &model;
    std::optional<PCAModel> refit;
    if (cfg_.refit_per_stage && stage && subset.size() >= 2) {
      refit = fit_share_pca(subset, cfg_.pca_dim, table().sectors);
      m = &*refit;
    }
    svg::Series s{stage_name(stage), {}, {}, {}};
    for (const auto& t : barycenter_trajectory(subset, stage, *m)) {
      w.add({std::to_string(t.year), stage_name(stage), format_double(t.position.x()), format_double(t.position.y()),
             format_double(t.sigma.x()), format_double(t.sigma.y())});
      s.x.push_back(t.position.x());
      s.y.push_back(t.position.y());
    }
    per_stage[stage_name(stage)] = s.x.size();
    series.push_back(std::move(s));
  }
  emit("trajectory.csv", w.str());

  std::vector<svg::LabeledPoint> anchors;
  for (const auto& sp : sector_positions(model)) anchors.push_back({sp.tag, sp.position.x(), sp.position.y()});
  emit("pca_loadings.svg", svg::scatter("Sector loadings", anchors));
  emit("trajectory.svg", svg::path_chart("Barycenter trajectories", series, anchors));

  const double total = model.eigenvalues.sum();
  std::vector<double> ratio;
  for (Eigen::Index d = 0; d < model.dimension(); ++d)
    ratio.push_back(total > 0 ? model.explained_variance[d] / total : 0.0);
  results()["pca"] = {{"explained_variance_ratio", ratio}, {"trajectory_points", per_stage}};
}

void Run::tca() {
  StrategyTensor tensor;
  const ValidatedDataset* dataset = nullptr;
  if (cfg_.tensor) {
    tensor = parse_tensor_csv(sectorscope::read_file(*cfg_.tensor), cfg_.tensor->string());
  } else {
    auto o = ProfileOptions::tensor(cfg_.years);
    const auto set = build_profiles(data(), o);
    tensor = build_tensor(set.profiles, cfg_.years, set.sectors);
    dataset = &data();
    if (const auto c = tensor.constant_fiber_count())
      warn(std::to_string(c) + " constant (sector, year) fibers left at zero after standardization");
  }
  const int r_max = std::min<int>(cfg_.r_max, static_cast<int>(tensor.investor_count()));
  if (r_max < cfg_.r_max) warn("rank range truncated to the investor count " + std::to_string(r_max));
  if (r_max < cfg_.r_min) throw InvalidArgument("--r-range exceeds the number of investors");

  RankScanOptions opt;
  opt.restarts = cfg_.restarts;
  opt.seed = cfg_.seed;
  opt.als.tol = cfg_.tol;
  opt.als.max_iter = cfg_.max_iter;
  opt.similarity_threshold = cfg_.similarity_threshold;
  opt.threads = cfg_.threads;
  const auto diag = rank_scan(tensor, cfg_.r_min, r_max, opt);
  const auto& chosen = diag.at(diag.chosen_rank).best_model;

  emit("tca_diagnostics.csv", diagnostics_csv(diag));
  emit("tca_factors.csv", factors_csv(chosen, tensor));

  csv::Writer top({"component", "rank", "investor_id", "name", "type", "value"});
  for (int r = 0; r < chosen.rank; ++r) {
    const auto ranked = top_investors(chosen, r, cfg_.top_k, tensor, dataset, r == 0 ? &summary_.warnings : nullptr);
    for (std::size_t i = 0; i < ranked.size(); ++i)
      top.add({std::to_string(r + 1), std::to_string(i + 1), ranked[i].investor_id, ranked[i].name,
               std::string(to_string(ranked[i].type)), format_double(ranked[i].value)});
  }
  emit("top_investors.csv", top.str());

  svg::Series err{"best error", {}, {}, {}}, sim{"similarity", {}, {}, {}};
  ordered_json ranks = ordered_json::array();
  for (const auto& rf : diag.ranks) {
    err.x.push_back(rf.rank);
    err.y.push_back(rf.best_error);
    err.error.push_back(rf.error_std);
    sim.x.push_back(rf.rank);
    sim.y.push_back(rf.similarity);
    ranks.push_back({{"R", rf.rank}, {"best_error", rf.best_error}, {"error_std", rf.error_std},
                     {"similarity", rf.similarity}, {"best_restart", rf.best_restart}});
  }
  const svg::Series curves[] = {err, sim};
  emit("tca_diagnostics.svg", svg::line_chart("Rank scan", "R", "", curves));
  emit("tca_factors.svg", svg::factor_grid("CP factors, R = " + std::to_string(chosen.rank), chosen, tensor));

  results()["tca"] = {{"chosen_R", diag.chosen_rank},
                      {"tensor", {tensor.investor_count(), tensor.sector_count(), tensor.year_count()}},
                      {"component_weights", std::vector<double>(chosen.weights.data(),
                                                                chosen.weights.data() + chosen.weights.size())},
                      {"ranks", ranks}};
  results()["chosen_R"] = diag.chosen_rank;
}

void Run::distances() {
  const auto reference = GroupSpec::of_type(InvestorType::Accelerator);
  std::vector<DistanceSeries> all;
  ordered_json out = ordered_json::object();
  const auto& profiles = table().profiles;
  for (const auto& stage : stages()) {
    const auto group = stage ? GroupSpec::of_stage(*stage) : GroupSpec::all();
    try {
      all.push_back(distance_series(profiles, group, reference, cfg_.years, data()));
    } catch (const Error& e) {
      warn("distance " + group.label() + " vs " + reference.label() + ": " + e.what());
      continue;
    }
    out[group.label()] = {{"argmin_year", all.back().argmin_year()}, {"min_distance", all.back().min_distance()}};
  }
  if (all.empty()) throw NumericError("no distance series could be computed against " + reference.label());
  emit("distances.csv", distances_csv(all));

  std::vector<svg::Series> series;
  for (const auto& d : all) {
    svg::Series s{d.group_a.label(), {}, {}, {}};
    for (const auto& e : d.entries) {
      s.x.push_back(e.year);
      s.y.push_back(e.distance);
      s.error.push_back(e.sigma);
    }
    series.push_back(std::move(s));
  }
  emit("distances.svg", svg::line_chart("Distance to " + reference.label(), "year", "distance", series));
  results()["distances"] = out;
}

void Run::spread() {
  const auto& model = plane();
  const auto profiles = unfiltered();
  const auto points = project_profiles(profiles, model);
  auto grid = HeatmapGrid::from_points(cfg_.grid, points);

  csv::Writer conc({"year", "investors", "max_cell_share"});
  std::vector<SpreadPoint> spread;
  ordered_json shares = ordered_json::object();
  for (int year : active_years(profiles)) {
    const auto subset = profiles_for_year(profiles, year);
    const auto counts = heatmap(subset, model, grid, year);
    const std::string y = std::to_string(year);
    emit("heatmap_" + y + ".csv", heatmap_csv(counts));
    emit("heatmap_" + y + ".svg", svg::heatmap("Investor density " + y, counts));
    conc.add({y, std::to_string(subset.size()), format_double(grid.max_cell_share(year))});
    shares[y] = grid.max_cell_share(year);
    if (subset.size() >= 2) spread.push_back(average_distance_to_barycenter(subset));
  }
  emit("concentration.csv", conc.str());
  emit("spread.csv", spread_csv(spread));

  svg::Series s{"mean distance", {}, {}, {}};
  for (const auto& p : spread) {
    s.x.push_back(p.year);
    s.y.push_back(p.mean_distance);
    s.error.push_back(p.sigma);
  }
  const svg::Series one[] = {s};
  emit("spread.svg", svg::line_chart("Average distance to barycenter", "year", "distance", one));
  results()["spread"] = {{"max_cell_share", shares}};
}

void Run::synth() {
  if (cfg_.scenario == "cp") {
    const auto sample = synth::generate_cp_tensor(cfg_.cp_investors, 28, cfg_.years.size(), cfg_.cp_rank, cfg_.noise,
                                                  cfg_.seed);
    auto tensor = sample.tensor;
    tensor.years = cfg_.years.years();
    emit("tensor.csv", tensor_csv(tensor));
    emit("truth.json", sample.truth.to_json());
    results()["synth"] = {{"scenario", "cp"}, {"rank", cfg_.cp_rank}};
    return;
  }
  auto config = synth::preset(cfg_.scenario, cfg_.seed);
  const auto eco = synth::generate_ecosystem(config);
  eco.write(cfg_.out);
  for (const char* f : {"startups.csv", "rounds.csv", "investors.csv", "ontology.json", "truth.json", "scenario.json"})
    summary_.artifacts.emplace_back(f);
  results()["synth"] = {{"scenario", cfg_.scenario},
                        {"startups", eco.startups.size()},
                        {"rounds", eco.rounds.size()},
                        {"investors", eco.investors.size()}};
}

}  // namespace

RunSummary run_command(std::string_view command, const PipelineConfig& config) {
  config.validate(command);
  Run run(config);
  if (command == "validate") run.validate();
  else if (command == "profiles") run.profiles();
  else if (command == "pca") run.pca();
  else if (command == "tca") run.tca();
  else if (command == "distances") run.distances();
  else if (command == "spread") run.spread();
  else if (command == "synth") run.synth();
  else if (command == "all") {
    run.validate();
    run.profiles();
    run.pca();
    run.distances();
    run.spread();
    run.tca();
  }
  run.manifest(command);
  return run.take();
}

}  // namespace sectorscope
