#pragma once

// Time-gridded comparison tables and their CSV form.
//
// Layout: optional "# key=value" metadata lines, a header whose first column is `t`, then
// one row per grid point. Missing values are empty fields. Numbers use the shortest
// representation that reads back to the same double, so write/read is lossless.

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace redundancy {

struct Column {
  std::string name;
  std::vector<std::optional<double>> values;

  bool operator==(const Column&) const = default;
};

struct ComparisonTable {
  std::vector<std::string> metadata;  // "key=value"
  std::vector<double> times;
  std::vector<Column> columns;

  void add_metadata(const std::string& key, const std::string& value) { metadata.push_back(key + "=" + value); }

  Column& add_column(std::string name, std::vector<std::optional<double>> values) {
    if (values.size() != times.size())
      throw ValidationError("column length " + std::to_string(values.size()) + " != grid length " +
                                std::to_string(times.size()),
                            name);
    for (const auto& c : columns)
      if (c.name == name) throw ValidationError("duplicate column", name);
    columns.push_back(Column{std::move(name), std::move(values)});
    return columns.back();
  }

  Column& add_column(std::string name, const std::vector<double>& values) {
    return add_column(std::move(name), std::vector<std::optional<double>>(values.begin(), values.end()));
  }

  const Column* find(std::string_view name) const {
    for (const auto& c : columns)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::optional<std::string> metadata_value(std::string_view key) const {
    for (const auto& line : metadata) {
      const auto eq = line.find('=');
      if (eq != std::string::npos && std::string_view(line).substr(0, eq) == key) return line.substr(eq + 1);
    }
    return std::nullopt;
  }

  bool operator==(const ComparisonTable&) const = default;
};

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw ValidationError("not a number: '" + std::string(text) + "'", what);
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline void write_csv(std::ostream& os, const ComparisonTable& table) {
  for (const auto& line : table.metadata) os << "# " << line << '\n';
  os << 't';
  for (const auto& c : table.columns) os << ',' << c.name;
  os << '\n';
  for (std::size_t i = 0; i < table.times.size(); ++i) {
    os << format_double(table.times[i]);
    for (const auto& c : table.columns) {
      os << ',';
      if (c.values[i]) os << format_double(*c.values[i]);
    }
    os << '\n';
  }
}

inline std::string to_csv(const ComparisonTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

inline ComparisonTable read_csv(std::istream& is) {
  ComparisonTable table;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      if (have_header) throw ValidationError("metadata after header at line " + std::to_string(line_no), "csv");
      table.metadata.push_back(line.substr(2));
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (!have_header) {
      if (fields.front() != "t") throw ValidationError("first column must be 't'", "csv");
      for (std::size_t i = 1; i < fields.size(); ++i) table.columns.push_back(Column{std::string(fields[i]), {}});
      have_header = true;
      continue;
    }
    if (fields.size() != table.columns.size() + 1)
      throw ValidationError("wrong field count at line " + std::to_string(line_no), "csv");
    table.times.push_back(parse_double(fields[0], "t"));
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto& col = table.columns[i - 1];
      if (fields[i].empty())
        col.values.push_back(std::nullopt);
      else
        col.values.push_back(parse_double(fields[i], col.name));
    }
  }
  if (!have_header) throw ValidationError("missing header", "csv");
  return table;
}

inline ComparisonTable from_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

}  // namespace redundancy
