#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hoopstyle::csv {

// Minimal comma-separated reader. Fields never contain commas or quotes in
// the formats this project reads and writes, so no quoting is handled.
struct Table {
  std::string source;  // file name, used in error locators
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based, parallel to rows

  // Index of a header column; throws ParseError when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::string locator(std::size_t row) const;
};

Table read(std::istream& in, std::string source);
Table read_file(const std::string& path);

double to_double(const Table& table, std::size_t row, std::size_t col);
long long to_int(const Table& table, std::size_t row, std::size_t col);
bool to_bool(const Table& table, std::size_t row, std::size_t col);

// Shortest round-trip representation of a double; identical across runs.
std::string format(double value);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace hoopstyle::csv
