#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sectorscope {

// Parent sector tags plus the child-tag resolution map. The order of
// parent_tags() defines the dimension order of every sector-space vector.
class SectorOntology {
 public:
  SectorOntology() = default;

  // Validates: parents unique and non-empty, every child maps to a non-empty
  // subset of parents. Parents missing from child_map are added as
  // self-mappings; a parent mapped to anything but itself is rejected.
  SectorOntology(std::vector<std::string> parent_tags,
                 std::map<std::string, std::vector<std::string>> child_map,
                 std::string version);

  static SectorOntology parse_json(std::string_view text);
  static SectorOntology load(const std::filesystem::path& path);
  std::string to_json() const;

  // 28 parent tags with a small child-tag map drawn from common category
  // groups. Shipped as data/ontology.json.
  static SectorOntology default_ontology();

  std::size_t size() const { return parents_.size(); }
  const std::vector<std::string>& parent_tags() const { return parents_; }
  const std::string& parent(std::size_t index) const { return parents_.at(index); }
  const std::string& version() const { return version_; }
  std::optional<std::size_t> index_of(std::string_view parent) const;

  // Sorted parent indices for a child (or parent) tag; nullptr if unknown.
  const std::vector<std::size_t>* lookup(std::string_view tag) const;
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& child_map() const {
    return child_map_;
  }

  bool operator==(const SectorOntology&) const = default;

 private:
  std::vector<std::string> parents_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> child_map_;
  std::string version_;
};

struct ParentResolution {
  std::vector<std::size_t> parents;  // sorted, unique parent indices
  std::vector<std::string> unrecognized;
  // Non-empty input of which no tag resolved.
  bool all_unrecognized = false;
};

ParentResolution resolve_parents(std::span<const std::string> tags, const SectorOntology& ontology);

}  // namespace sectorscope
