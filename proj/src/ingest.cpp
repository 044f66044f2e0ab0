#include "sectorscope/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sectorscope/csv.hpp"
#include "sectorscope/report.hpp"

namespace sectorscope {

std::string_view to_string(StartupStatus status) {
  switch (status) {
    case StartupStatus::Active: return "active";
    case StartupStatus::Closed: return "closed";
    case StartupStatus::Acquired: return "acquired";
    case StartupStatus::Ipo: return "ipo";
  }
  return "active";
}

std::string_view to_string(InvestorType type) {
  switch (type) {
    case InvestorType::Accelerator: return "accelerator";
    case InvestorType::MicroVc: return "micro_vc";
    case InvestorType::Vc: return "vc";
    case InvestorType::CorporateVc: return "corporate_vc";
    case InvestorType::Angel: return "angel";
    case InvestorType::Other: return "other";
  }
  return "other";
}

std::string_view to_string(StageClass stage) {
  switch (stage) {
    case StageClass::Seed: return "seed";
    case StageClass::SeriesA: return "a";
    case StageClass::SeriesB: return "b";
    case StageClass::SeriesCPlus: return "c+";
  }
  return "seed";
}

StartupStatus parse_status(std::string_view text) {
  const auto t = trim(text);
  for (auto s : {StartupStatus::Active, StartupStatus::Closed, StartupStatus::Acquired, StartupStatus::Ipo})
    if (t == to_string(s)) return s;
  throw InvalidArgument("unknown startup status '" + t + "'");
}

InvestorType parse_investor_type(std::string_view text) {
  const auto t = trim(text);
  for (auto type : kAllInvestorTypes)
    if (t == to_string(type)) return type;
  throw InvalidArgument("unknown investor type '" + t + "'");
}

StageClass parse_stage(std::string_view text) {
  return *classify_stage(text, StageOptions{.strict = true, .fallback = std::nullopt});
}

std::optional<StageClass> classify_stage(std::string_view label, const StageOptions& options) {
  std::string key;
  for (unsigned char c : label)
    if (std::isalnum(c)) key.push_back(static_cast<char>(std::tolower(c)));
  std::string_view k = key;
  if (k == "seed") return StageClass::Seed;
  if (k.starts_with("series")) k.remove_prefix(6);
  if (k.size() == 1) {
    if (k[0] == 'a') return StageClass::SeriesA;
    if (k[0] == 'b') return StageClass::SeriesB;
    if (k[0] >= 'c' && k[0] <= 'z') return StageClass::SeriesCPlus;
  }
  if (options.strict) throw ClassificationError("unknown stage label '" + std::string(label) + "'");
  return options.fallback;
}

// ---------------------------------------------------------------------------

ValidatedDataset ValidatedDataset::create(std::vector<RawStartup> startups, std::vector<RawRound> rounds,
                                          std::vector<RawInvestor> investors, SectorOntology ontology,
                                          const LoadOptions& options) {
  ValidatedDataset ds;
  ds.startups_ = std::move(startups);
  ds.rounds_ = std::move(rounds);
  ds.investors_ = std::move(investors);
  ds.ontology_ = std::move(ontology);

  std::vector<std::string> dup;
  {
    std::unordered_set<std::string> seen;
    for (const auto& s : ds.startups_) {
      if (s.startup_id.empty()) throw IntegrityError("empty startup_id", {});
      if (!seen.insert(s.startup_id).second) dup.push_back(s.startup_id);
    }
    if (!dup.empty()) throw IntegrityError("duplicate startup_id", dup);
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& r : ds.rounds_) {
      if (r.round_id.empty()) throw IntegrityError("empty round_id", {});
      if (!seen.insert(r.round_id).second) dup.push_back(r.round_id);
    }
    if (!dup.empty()) throw IntegrityError("duplicate round_id", dup);
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& i : ds.investors_) {
      if (i.investor_id.empty()) throw IntegrityError("empty investor_id", {});
      if (!seen.insert(i.investor_id).second) dup.push_back(i.investor_id);
    }
    if (!dup.empty()) throw IntegrityError("duplicate investor_id", dup);
  }
  ds.build_index();

  std::vector<std::string> bad_rounds;
  std::set<std::string> missing;
  for (const auto& r : ds.rounds_) {
    bool bad = false;
    if (!ds.find_startup(r.startup_id)) {
      missing.insert("startup " + r.startup_id);
      bad = true;
    }
    std::unordered_set<std::string_view> in_round;
    for (const auto& inv : r.investor_ids) {
      if (!ds.find_investor(inv)) {
        missing.insert("investor " + inv);
        bad = true;
      }
      if (!in_round.insert(inv).second) {
        missing.insert("repeated investor " + inv);
        bad = true;
      }
    }
    if (bad) bad_rounds.push_back(r.round_id);
  }
  if (!bad_rounds.empty())
    throw IntegrityError("rounds with dangling keys [" +
                             join(std::vector<std::string>(missing.begin(), missing.end()), "; ") + "]",
                         bad_rounds);

  std::map<std::string, std::size_t> unknown_tags;
  for (const auto& s : ds.startups_) {
    if (s.tags.empty()) ds.warnings_.push_back("startup " + s.startup_id + " has no tags and will be excluded");
    for (const auto& tag : resolve_parents(s.tags, ds.ontology_).unrecognized) ++unknown_tags[tag];
  }
  if (!unknown_tags.empty()) {
    if (options.strict_tags) {
      std::vector<std::string> tags;
      for (const auto& [t, n] : unknown_tags) tags.push_back(t);
      throw ClassificationError("unrecognized sector tags: " + join(tags, ", "));
    }
    for (const auto& [t, n] : unknown_tags)
      ds.warnings_.push_back("unrecognized tag '" + t + "' on " + std::to_string(n) + " startup(s)");
  }
  return ds;
}

void ValidatedDataset::build_index() {
  startup_index_.clear();
  investor_index_.clear();
  for (std::size_t i = 0; i < startups_.size(); ++i) startup_index_.emplace(startups_[i].startup_id, i);
  for (std::size_t i = 0; i < investors_.size(); ++i) investor_index_.emplace(investors_[i].investor_id, i);
}

const RawStartup* ValidatedDataset::find_startup(std::string_view id) const {
  auto it = startup_index_.find(std::string(id));
  return it == startup_index_.end() ? nullptr : &startups_[it->second];
}

const RawInvestor* ValidatedDataset::find_investor(std::string_view id) const {
  auto it = investor_index_.find(std::string(id));
  return it == investor_index_.end() ? nullptr : &investors_[it->second];
}

DatasetCounts ValidatedDataset::counts() const {
  DatasetCounts c;
  c.startups = startups_.size();
  c.rounds = rounds_.size();
  c.investors = investors_.size();
  c.parent_tags = ontology_.size();
  for (const auto& r : rounds_) c.participations += r.investor_ids.size();
  return c;
}

// ---------------------------------------------------------------------------

namespace {

class RowReader {
 public:
  RowReader(const csv::Table& table, std::string source, std::initializer_list<std::string_view> columns)
      : table_(table), source_(std::move(source)) {
    for (auto name : columns) {
      const int idx = table.column(name);
      if (idx < 0) throw SchemaError(source_, 1, "missing column '" + std::string(name) + "'");
      index_.push_back(idx);
    }
  }

  std::size_t size() const { return table_.rows.size(); }
  std::size_t line(std::size_t r) const { return r + 2; }
  const std::string& at(std::size_t r, std::size_t c) const { return table_.rows[r][index_[c]]; }

  template <class F>
  auto parse(std::size_t r, std::size_t c, F&& f) const {
    try {
      return f(at(r, c));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(source_, line(r), table_.header[index_[c]] + ": " + e.what());
    }
  }

  const std::string& source() const { return source_; }

 private:
  const csv::Table& table_;
  std::string source_;
  std::vector<int> index_;
};

std::vector<std::string> split_list(const std::string& field) {
  std::vector<std::string> out;
  if (trim(field).empty()) return out;
  for (auto& part : split(field, '|')) {
    auto t = trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::optional<double> parse_amount(const std::string& field) {
  const auto t = trim(field);
  if (t.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    throw InvalidArgument("unparsable amount '" + t + "'");
  if (v < 0) throw InvalidArgument("negative amount '" + t + "'");
  return v;
}

}  // namespace

std::vector<RawStartup> parse_startups(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  RowReader rows(table, source, {"startup_id", "name", "country_code", "status", "founded_date", "tags"});
  std::vector<RawStartup> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RawStartup s;
    s.startup_id = trim(rows.at(r, 0));
    s.name = rows.at(r, 1);
    s.country_code = trim(rows.at(r, 2));
    s.status = rows.parse(r, 3, [](const std::string& f) { return parse_status(f); });
    s.founded_date = rows.parse(r, 4, [](const std::string& f) { return Date::parse(trim(f)); });
    s.tags = split_list(rows.at(r, 5));
    if (s.startup_id.empty()) throw SchemaError(source, rows.line(r), "empty startup_id");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RawRound> parse_rounds(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  RowReader rows(table, source,
                 {"round_id", "startup_id", "announced_date", "stage_label", "amount_usd", "investor_ids"});
  std::vector<RawRound> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RawRound round;
    round.round_id = trim(rows.at(r, 0));
    round.startup_id = trim(rows.at(r, 1));
    round.announced_date = rows.parse(r, 2, [](const std::string& f) { return Date::parse(trim(f)); });
    round.stage_label = trim(rows.at(r, 3));
    round.amount = rows.parse(r, 4, parse_amount);
    round.investor_ids = split_list(rows.at(r, 5));
    if (round.round_id.empty()) throw SchemaError(source, rows.line(r), "empty round_id");
    out.push_back(std::move(round));
  }
  return out;
}

std::vector<RawInvestor> parse_investors(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  RowReader rows(table, source, {"investor_id", "name", "type_label"});
  std::vector<RawInvestor> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RawInvestor inv;
    inv.investor_id = trim(rows.at(r, 0));
    inv.name = rows.at(r, 1);
    inv.type = rows.parse(r, 2, [](const std::string& f) { return parse_investor_type(f); });
    if (inv.investor_id.empty()) throw SchemaError(source, rows.line(r), "empty investor_id");
    out.push_back(std::move(inv));
  }
  return out;
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "startups.csv", dir / "rounds.csv", dir / "investors.csv", dir / "ontology.json"};
}

ValidatedDataset load_dataset(const DatasetPaths& paths, const LoadOptions& options) {
  auto startups = parse_startups(read_file(paths.startups), paths.startups.string());
  auto rounds = parse_rounds(read_file(paths.rounds), paths.rounds.string());
  auto investors = parse_investors(read_file(paths.investors), paths.investors.string());
  auto ontology = paths.ontology.empty() ? SectorOntology::default_ontology() : SectorOntology::load(paths.ontology);
  return ValidatedDataset::create(std::move(startups), std::move(rounds), std::move(investors),
                                  std::move(ontology), options);
}

std::string startups_csv(const std::vector<RawStartup>& startups) {
  csv::Writer w({"startup_id", "name", "country_code", "status", "founded_date", "tags"});
  for (const auto& s : startups)
    w.add({s.startup_id, s.name, s.country_code, std::string(to_string(s.status)), s.founded_date.str(),
           join(s.tags, "|")});
  return w.str();
}

std::string rounds_csv(const std::vector<RawRound>& rounds) {
  csv::Writer w({"round_id", "startup_id", "announced_date", "stage_label", "amount_usd", "investor_ids"});
  for (const auto& r : rounds)
    w.add({r.round_id, r.startup_id, r.announced_date.str(), r.stage_label,
           r.amount ? format_double(*r.amount) : std::string{}, join(r.investor_ids, "|")});
  return w.str();
}

std::string investors_csv(const std::vector<RawInvestor>& investors) {
  csv::Writer w({"investor_id", "name", "type_label"});
  for (const auto& i : investors) w.add({i.investor_id, i.name, std::string(to_string(i.type))});
  return w.str();
}

void export_dataset(const ValidatedDataset& dataset, const std::filesystem::path& dir) {
  const auto paths = DatasetPaths::in_directory(dir);
  write_file_atomic(paths.startups, startups_csv(dataset.startups()));
  write_file_atomic(paths.rounds, rounds_csv(dataset.rounds()));
  write_file_atomic(paths.investors, investors_csv(dataset.investors()));
  write_file_atomic(paths.ontology, dataset.ontology().to_json());
}

ValidatedDataset filter_startups(const ValidatedDataset& dataset, const FilterOptions& options) {
  std::unordered_set<std::string_view> funded;
  for (const auto& r : dataset.rounds())
    if (options.round_years.contains(r.announced_date.year)) funded.insert(r.startup_id);

  ValidatedDataset out;
  out.ontology_ = dataset.ontology();
  out.investors_ = dataset.investors();
  for (const auto& s : dataset.startups()) {
    if (s.country_code == options.country && s.status != StartupStatus::Closed && !s.tags.empty() &&
        funded.contains(s.startup_id) && s.founded_date > options.founded_after)
      out.startups_.push_back(s);
  }
  out.build_index();
  for (const auto& r : dataset.rounds())
    if (options.round_years.contains(r.announced_date.year) && out.find_startup(r.startup_id))
      out.rounds_.push_back(r);
  for (const auto& w : dataset.warnings())
    if (!w.starts_with("startup ")) out.warnings_.push_back(w);
  const std::string empty_warning = "filter retained no startups";
  if (out.startups_.empty() && std::find(out.warnings_.begin(), out.warnings_.end(), empty_warning) == out.warnings_.end())
    out.warnings_.push_back(empty_warning);
  return out;
}

}  // namespace sectorscope
