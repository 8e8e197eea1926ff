#include "rankreg/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rankreg/error.hpp"

namespace rankreg::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // parsed lazily per mapped column
  std::vector<std::vector<std::string>> cells;
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io_error, "cannot open '" + path + "'");
  }
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (first) {
      t.header = fields;
      first = false;
    } else {
      if (fields.size() != t.header.size()) {
        fail(ErrorCode::parse_error,
             "row " + std::to_string(t.cells.size() + 2) + " has " +
                 std::to_string(fields.size()) + " fields, expected " +
                 std::to_string(t.header.size()));
      }
      t.cells.push_back(std::move(fields));
    }
  }
  if (first) {
    fail(ErrorCode::parse_error, "'" + path + "' has no header row");
  }
  return t;
}

std::size_t column_index(const Table& t, const std::string& name) {
  for (std::size_t j = 0; j < t.header.size(); ++j) {
    if (t.header[j] == name) return j;
  }
  fail(ErrorCode::missing_column, "column '" + name + "' not found");
}

double parse_cell(const std::string& cell, std::size_t row_1based,
                  const std::string& col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    fail(ErrorCode::parse_error, "row " + std::to_string(row_1based) +
                                     ", column '" + col +
                                     "': cannot parse '" + cell + "'");
  }
  return value;
}

std::vector<double> extract(const Table& t, const std::string& name) {
  std::size_t j = column_index(t, name);
  std::vector<double> out;
  out.reserve(t.cells.size());
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    // +2: header is row 1.
    out.push_back(parse_cell(t.cells[i][j], i + 2, name));
  }
  return out;
}

}  // namespace

Sample load_csv_sample(const std::string& path, const ColumnMap& map) {
  Table t = read_table(path);
  if (t.cells.empty()) {
    fail(ErrorCode::parse_error, "'" + path + "' has no data rows");
  }
  Sample s;
  if (map.y.empty()) {
    fail(ErrorCode::missing_column, "an outcome column mapping is required");
  }
  s.y = extract(t, map.y);
  if (!map.w.empty()) s.w = extract(t, map.w);
  for (const auto& xname : map.x) s.x.push_back(extract(t, xname));
  if (!map.z.empty()) s.z = extract(t, map.z);
  if (!map.run.empty()) s.run = extract(t, map.run);
  return s;
}

PanelSample load_csv_panel(const std::string& path, const ColumnMap& map) {
  Table t = read_table(path);
  if (t.cells.empty()) {
    fail(ErrorCode::parse_error, "'" + path + "' has no data rows");
  }
  if (map.y.empty() || map.y_pre.empty() || map.w.empty()) {
    fail(ErrorCode::missing_column,
         "panel commands need y, y_pre and w column mappings");
  }
  PanelSample p;
  p.y1 = extract(t, map.y);
  p.y0 = extract(t, map.y_pre);
  p.w = extract(t, map.w);
  return p;
}

}  // namespace rankreg::cli
