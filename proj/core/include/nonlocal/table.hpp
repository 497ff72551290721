#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nonlocal {

using Cell = std::variant<std::int64_t, double, std::string>;

enum class TableFormat { csv, json };

/// Rectangular result table plus the key/value metadata needed to rerun it.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Throws DomainError when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::string text(std::size_t row, std::string_view name) const;
  std::string meta(std::string_view key) const;
};

/// Doubles use 17 significant digits. CSV: `# key=value` metadata lines,
/// one header row, comma-separated cells; non-finite doubles print as
/// nan/inf. JSON: {"metadata": {...}, "columns": [...], "rows": [{...}]}
/// with non-finite doubles as null.
std::string render_table(const ResultTable& t, TableFormat format);

/// Writes render_table() to `path` ("-" is stdout). Throws IoError.
void emit_table(const ResultTable& t, TableFormat format, const std::string& path);

std::string format_double(double v);

}  // namespace nonlocal
