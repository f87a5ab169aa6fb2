#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rejuv::cli {

using nlohmann::json;
using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// What a command produces: tabular data plus a JSON summary (argmax, totals, notes).
struct Output {
  Table table;
  json summary = json::object();
  std::vector<std::string> notes;  ///< printed to stderr, never into data rows
};

/// 15 significant digits.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline double rounded(double x) { return std::stod(format_number(x)); }

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return std::to_string(v);
      },
      c);
}

inline json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? json(rounded(v)) : json(nullptr);
        else return json(v);
      },
      c);
}

inline void write_csv(std::ostream& out, const Table& t) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << quote(t.columns[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote(cell_text(row[i]));
    out << '\n';
  }
}

inline json to_json(const Output& o) {
  json rows = json::array();
  for (const auto& row : o.table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[o.table.columns[i]] = cell_json(row[i]);
    rows.push_back(r);
  }
  return {{"rows", rows}, {"summary", o.summary}};
}

}  // namespace rejuv::cli
