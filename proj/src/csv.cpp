#include "uavsim/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>

namespace uavsim::csv {

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::vector<Row> read(std::istream& in, const std::vector<std::string>& expected_header) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!have_header) {
      if (fields.size() != expected_header.size() ||
          !std::equal(fields.begin(), fields.end(), expected_header.begin())) {
        std::string want;
        for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
        throw CsvError(line_no, "expected header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != expected_header.size()) {
      throw CsvError(line_no, "expected " + std::to_string(expected_header.size()) +
                                  " columns, got " + std::to_string(fields.size()));
    }
    rows.push_back({line_no, std::vector<std::string>(fields.begin(), fields.end())});
  }
  if (!have_header) throw CsvError(line_no, "missing header");
  return rows;
}

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw CsvError(line, "invalid number '" + std::string(field) + "'");
  }
  return value;
}

std::int64_t parse_int(std::string_view field, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw CsvError(line, "invalid integer '" + std::string(field) + "'");
  }
  return value;
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace uavsim::csv
