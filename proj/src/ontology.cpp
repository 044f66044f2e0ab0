#include "sectorscope/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sectorscope/common.hpp"

namespace sectorscope {

SectorOntology::SectorOntology(std::vector<std::string> parent_tags,
                               std::map<std::string, std::vector<std::string>> child_map,
                               std::string version)
    : parents_(std::move(parent_tags)), version_(std::move(version)) {
  if (parents_.empty()) throw InvalidArgument("ontology has no parent tags");
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    if (trim(parents_[i]).empty()) throw InvalidArgument("ontology has an empty parent tag");
    if (!index.emplace(parents_[i], i).second)
      throw InvalidArgument("duplicate parent tag '" + parents_[i] + "'");
  }
  for (auto& [child, parents] : child_map) {
    if (parents.empty()) throw InvalidArgument("child tag '" + child + "' maps to no parent");
    std::vector<std::size_t> ids;
    for (const auto& p : parents) {
      auto it = index.find(p);
      if (it == index.end())
        throw InvalidArgument("child tag '" + child + "' maps to unknown parent '" + p + "'");
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (auto self = index.find(child); self != index.end()) {
      if (ids.size() != 1 || ids[0] != self->second)
        throw InvalidArgument("parent tag '" + child + "' must map to itself");
    }
    child_map_.emplace(child, std::move(ids));
  }
  for (std::size_t i = 0; i < parents_.size(); ++i) child_map_.try_emplace(parents_[i], std::vector{i});
}

SectorOntology SectorOntology::parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("ontology json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("parent_tags") || !doc["parent_tags"].is_array())
    throw InvalidArgument("ontology json: missing parent_tags array");
  std::vector<std::string> parents;
  for (const auto& p : doc["parent_tags"]) {
    if (!p.is_string()) throw InvalidArgument("ontology json: parent tag is not a string");
    parents.push_back(p.get<std::string>());
  }
  std::map<std::string, std::vector<std::string>> children;
  if (doc.contains("child_map")) {
    if (!doc["child_map"].is_object()) throw InvalidArgument("ontology json: child_map is not an object");
    for (const auto& [child, list] : doc["child_map"].items()) {
      if (!list.is_array()) throw InvalidArgument("ontology json: child_map['" + child + "'] is not an array");
      auto& dst = children[child];
      for (const auto& p : list) {
        if (!p.is_string()) throw InvalidArgument("ontology json: child_map value is not a string");
        dst.push_back(p.get<std::string>());
      }
    }
  }
  std::string version = doc.value("version", std::string{});
  return SectorOntology(std::move(parents), std::move(children), std::move(version));
}

SectorOntology SectorOntology::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string SectorOntology::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = version_;
  doc["parent_tags"] = parents_;
  nlohmann::ordered_json children = nlohmann::ordered_json::object();
  for (const auto& [child, ids] : child_map_) {
    auto list = nlohmann::ordered_json::array();
    for (auto id : ids) list.push_back(parents_[id]);
    children[child] = std::move(list);
  }
  doc["child_map"] = std::move(children);
  return doc.dump(2) + "\n";
}

SectorOntology SectorOntology::default_ontology() {
  std::vector<std::string> parents = {
      "Commerce and Shopping",    "Community and Lifestyle",
      "Consumer Goods",           "Content and Publishing",
      "Data and Analytics",       "Education",
      "Energy",                   "Events",
      "Financial Services",       "Food and Beverage",
      "Gaming",                   "Government and Military",
      "Health Care",              "Information Technology",
      "Internet Services",        "Manufacturing",
      "Media and Entertainment",  "Messaging and Telecommunications",
      "Natural Resources",        "Navigation and Mapping",
      "Privacy and Security",     "Professional Services",
      "Real Estate",              "Sales and Marketing",
      "Science and Engineering",  "Sustainability",
      "Transportation",           "Travel and Tourism",
  };
  std::map<std::string, std::vector<std::string>> children = {
      {"Administrative Services", {"Professional Services"}},
      {"Advertising", {"Sales and Marketing"}},
      {"Agriculture and Farming", {"Food and Beverage", "Natural Resources"}},
      {"Apps", {"Internet Services"}},
      {"Artificial Intelligence", {"Data and Analytics", "Information Technology"}},
      {"Biotechnology", {"Health Care", "Science and Engineering"}},
      {"Clothing and Apparel", {"Consumer Goods"}},
      {"Consumer Electronics", {"Consumer Goods", "Manufacturing"}},
      {"Design", {"Professional Services"}},
      {"Hardware", {"Manufacturing"}},
      {"Lending and Investments", {"Financial Services"}},
      {"Mobile", {"Messaging and Telecommunications"}},
      {"Music and Audio", {"Media and Entertainment"}},
      {"Payments", {"Financial Services"}},
      {"Platforms", {"Internet Services"}},
      {"Software", {"Information Technology"}},
      {"Sports", {"Community and Lifestyle"}},
      {"Video", {"Media and Entertainment"}},
  };
  return SectorOntology(std::move(parents), std::move(children), "default-28-v1");
}

std::optional<std::size_t> SectorOntology::index_of(std::string_view parent) const {
  for (std::size_t i = 0; i < parents_.size(); ++i)
    if (parents_[i] == parent) return i;
  return std::nullopt;
}

const std::vector<std::size_t>* SectorOntology::lookup(std::string_view tag) const {
  auto it = child_map_.find(tag);
  return it == child_map_.end() ? nullptr : &it->second;
}

ParentResolution resolve_parents(std::span<const std::string> tags, const SectorOntology& ontology) {
  ParentResolution out;
  std::set<std::size_t> parents;
  for (const auto& raw : tags) {
    const auto tag = trim(raw);
    if (tag.empty()) continue;
    if (const auto* ids = ontology.lookup(tag))
      parents.insert(ids->begin(), ids->end());
    else
      out.unrecognized.push_back(tag);
  }
  out.parents.assign(parents.begin(), parents.end());
  out.all_unrecognized = out.parents.empty() && !out.unrecognized.empty();
  return out;
}

}  // namespace sectorscope
