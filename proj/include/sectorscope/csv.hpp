#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sectorscope::csv {

// A parsed RFC-4180 table. `rows` excludes the header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, or -1.
  int column(std::string_view name) const;
};

// Parses UTF-8 text with an optional BOM, CRLF or LF line endings and quoted
// fields (embedded commas, quotes and newlines). Throws SchemaError on an
// unterminated quote or a row whose width differs from the header.
Table parse(std::string_view text, const std::string& source = "<memory>");
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Accumulates rows and renders them with a trailing newline per row.
class Writer {
 public:
  explicit Writer(std::vector<std::string> header);
  void add(std::vector<std::string> fields);
  std::string str() const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace sectorscope::csv
