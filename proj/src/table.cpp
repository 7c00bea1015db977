#include "choice_attach/table.hpp"

#include "choice_attach/model.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace choice_attach {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n' || c == '\r') throw ConfigError("table text cells must be single-line");
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line, std::vector<bool>& quoted) {
  std::vector<std::string> fields;
  quoted.clear();
  std::string cur;
  bool in_quotes = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      quoted.push_back(was_quoted);
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw ConfigError("unterminated quote in CSV line");
  fields.push_back(std::move(cur));
  quoted.push_back(was_quoted);
  return fields;
}

Cell parse_bare(const std::string& field) {
  if (field.empty()) return std::monostate{};
  std::int64_t i = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), i);
  if (ec == std::errc() && ptr == field.data() + field.size()) return i;
  char* end = nullptr;
  const double d = std::strtod(field.c_str(), &end);
  // Subnormals set ERANGE but are read exactly.
  if (end == field.c_str() + field.size()) return d;
  throw ConfigError("unparseable CSV cell '" + field + "'");
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return v;
      },
      cell);
}

Cell json_to_cell(const ordered_json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ConfigError("unsupported JSON cell: " + j.dump());
}

}  // namespace

Cell real_cell(double x) {
  if (std::isnan(x)) return std::string("nan");
  if (std::isinf(x)) return std::string(x > 0 ? "inf" : "-inf");
  return x;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          return buf;
        } else {
          return quote(v);
        }
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  out += "# schema_version=" + table.schema_version + "\n";
  out += "# command_line=" + table.command_line + "\n";
  for (const auto& [key, value] : table.config) out += "# config." + key + "=" + value + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += "\n";
  }
  return out;
}

Table parse_csv(std::string_view text) {
  Table table;
  table.schema_version.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_columns = false;
  std::vector<bool> quoted;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("malformed CSV header line: " + line);
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "schema_version")
        table.schema_version = value;
      else if (key == "command_line")
        table.command_line = value;
      else if (key.rfind("config.", 0) == 0)
        table.config.emplace_back(key.substr(7), value);
      else
        throw ConfigError("unknown CSV header key: " + key);
      continue;
    }
    if (!have_columns) {
      table.columns = split_csv_line(line, quoted);
      have_columns = true;
      continue;
    }
    const auto fields = split_csv_line(line, quoted);
    if (fields.size() != table.columns.size()) throw ConfigError("CSV row width does not match header");
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      row.push_back(quoted[i] ? Cell(fields[i]) : parse_bare(fields[i]));
    table.rows.push_back(std::move(row));
  }
  if (!have_columns) throw ConfigError("CSV has no column line");
  return table;
}

std::string to_json(const Table& table) {
  ordered_json j;
  j["schema_version"] = table.schema_version;
  j["command_line"] = table.command_line;
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : table.config) config[key] = value;
  j["config"] = std::move(config);
  j["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

Table parse_json(std::string_view text) {
  const auto j = ordered_json::parse(text);
  Table table;
  table.schema_version = j.at("schema_version").get<std::string>();
  table.command_line = j.at("command_line").get<std::string>();
  for (const auto& [key, value] : j.at("config").items()) table.config.emplace_back(key, value.get<std::string>());
  table.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& cell : r) row.push_back(json_to_cell(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace choice_attach
