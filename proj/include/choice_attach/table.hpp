#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace choice_attach {

inline constexpr std::string_view kSchemaVersion = "1";

/// Empty, integer, real, or text. Non-finite reals are stored as text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

Cell real_cell(double x);

/// A result table plus the run metadata every output file embeds.
struct Table {
  std::string schema_version{kSchemaVersion};
  /// Command line that regenerates the file.
  std::string command_line;
  /// Ordered (name, value) pairs of the run configuration.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Reals print with 17 significant digits ("%.17g"); text is always quoted.
std::string format_cell(const Cell& cell);

/// "# key=value" header lines, then the column line, then rows.
std::string to_csv(const Table& table);
Table parse_csv(std::string_view text);

std::string to_json(const Table& table);
Table parse_json(std::string_view text);

}  // namespace choice_attach
