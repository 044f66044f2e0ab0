#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sectorscope {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file: missing column, unparsable field. Row numbers are
// 1-based and count the header as row 1.
class SchemaError : public Error {
 public:
  SchemaError(std::string file, std::size_t row, const std::string& message);
  const std::string& file() const { return file_; }
  std::size_t row() const { return row_; }

 private:
  std::string file_;
  std::size_t row_;
};

// Dangling or duplicated keys across tables.
class IntegrityError : public Error {
 public:
  IntegrityError(const std::string& message, std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  static bool valid(int year, int month, int day);
  // Strict ISO "YYYY-MM-DD".
  static Date parse(std::string_view text);
  std::string str() const;
};

// Closed interval of calendar years.
struct YearRange {
  int first = 2000;
  int last = 2017;

  bool operator==(const YearRange&) const = default;
  bool contains(int year) const { return year >= first && year <= last; }
  int size() const { return last >= first ? last - first + 1 : 0; }
  bool empty() const { return last < first; }
  std::vector<int> years() const;

  // "2000:2017" or a single year "2010".
  static YearRange parse(std::string_view text);
  std::string str() const;
};

// Shortest round-trip decimal representation; used for every numeric CSV
// field so outputs are byte-stable.
std::string format_double(double value);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);
std::string join(const std::vector<std::string>& parts, std::string_view delimiter);

// SplitMix64 step; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace sectorscope
