#include "sectorscope/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace sectorscope {

SchemaError::SchemaError(std::string file, std::size_t row, const std::string& message)
    : Error(file + ": row " + std::to_string(row) + ": " + message),
      file_(std::move(file)),
      row_(row) {}

IntegrityError::IntegrityError(const std::string& message, std::vector<std::string> ids)
    : Error(message + ": " + join(ids, ", ")), ids_(std::move(ids)) {}

bool Date::valid(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int limit = kDays[month - 1];
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  if (month == 2 && leap) limit = 29;
  return day <= limit;
}

namespace {

bool parse_fixed_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Date Date::parse(std::string_view text) {
  Date d;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !parse_fixed_int(text.substr(0, 4), d.year) ||
      !parse_fixed_int(text.substr(5, 2), d.month) ||
      !parse_fixed_int(text.substr(8, 2), d.day) || !valid(d.year, d.month, d.day)) {
    throw InvalidArgument("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  }
  return d;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::vector<int> YearRange::years() const {
  std::vector<int> out;
  for (int y = first; y <= last; ++y) out.push_back(y);
  return out;
}

YearRange YearRange::parse(std::string_view text) {
  const auto colon = text.find(':');
  YearRange r;
  const auto a = trim(text.substr(0, colon));
  const auto b = colon == std::string_view::npos ? a : trim(text.substr(colon + 1));
  if (!parse_fixed_int(a, r.first) || !parse_fixed_int(b, r.last))
    throw InvalidArgument("invalid year range '" + std::string(text) + "'");
  if (r.empty()) throw InvalidArgument("empty year range '" + std::string(text) + "'");
  return r;
}

std::string YearRange::str() const { return std::to_string(first) + ":" + std::to_string(last); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char delimiter) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, std::string_view delimiter) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(delimiter);
    out.append(parts[i]);
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace sectorscope
