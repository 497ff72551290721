#include "nonlocal/table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return csv_escape(v);
        }
      },
      cell);
}

std::string json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? format_double(v) : std::string("null");
        } else {
          return json_string(v);
        }
      },
      cell);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    throw DomainError(fmt::format("table row has {} cells, header has {}", row.size(), header.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DomainError(fmt::format("no column named '{}'", name));
}

double ResultTable::number(std::size_t row, std::string_view name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw DomainError(fmt::format("column '{}' is not numeric", name));
}

std::string ResultTable::text(std::size_t row, std::string_view name) const {
  return csv_cell(rows.at(row).at(column(name)));
}

std::string ResultTable::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  throw DomainError(fmt::format("no metadata key '{}'", key));
}

std::string render_table(const ResultTable& t, TableFormat format) {
  std::string out;
  if (format == TableFormat::csv) {
    for (const auto& [k, v] : t.metadata) out += fmt::format("# {}={}\n", k, v);
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(t.header[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  out += "{\n  \"metadata\": {";
  for (std::size_t i = 0; i < t.metadata.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += json_string(t.metadata[i].first) + ": " + json_string(t.metadata[i].second);
  }
  out += t.metadata.empty() ? "},\n" : "\n  },\n";
  out += "  \"columns\": [";
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ", ";
    out += json_string(t.header[i]);
  }
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n    {" : "\n    {";
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i) out += ", ";
      out += json_string(t.header[i]) + ": " + json_cell(t.rows[r][i]);
    }
    out += "}";
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void emit_table(const ResultTable& t, TableFormat format, const std::string& path) {
  const std::string text = render_table(t, format);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing table to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot open '{}' for writing", path));
  file << text;
  file.close();
  if (!file) throw IoError(fmt::format("failed writing '{}'", path));
}

}  // namespace nonlocal
