#pragma once

// Minimal CSV helpers shared by the file formats in this project. Fields are
// plain (no quoting); doubles are written in shortest round-trip form.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavsim::csv {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Row {
  std::size_t line = 0;  ///< 1-based
  std::vector<std::string> fields;
};

std::vector<std::string_view> split(std::string_view line);
std::string_view trim(std::string_view s);

/// Reads a header plus data rows; the header must equal `expected_header` and
/// every row must have the same number of fields. Blank lines are skipped.
std::vector<Row> read(std::istream& in, const std::vector<std::string>& expected_header);

double parse_double(std::string_view field, std::size_t line);
std::int64_t parse_int(std::string_view field, std::size_t line);

/// Shortest representation that parses back to the identical double.
std::string format_double(double value);

}  // namespace uavsim::csv
