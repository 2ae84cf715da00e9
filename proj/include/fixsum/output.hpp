#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fixsum/bigint.hpp"

namespace fixsum {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

/// Where and how a command writes its table. CSV is RFC-4180-style with a
/// header row and LF line endings; every field is numeric or a bare
/// identifier, so no quoting is ever needed. Exact counts are always written
/// as full decimal integers (as JSON strings in JSON output, so they survive
/// round-trips losslessly).
struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty = standard output
  int precision = 10;    // significant digits for real columns
};

/// One table cell: empty, integer, real, or text (identifiers and exact
/// decimal counts both travel as text).
using Cell = std::variant<std::monostate, long long, double, std::string>;

inline Cell count_cell(const Count& value) { return value.str(); }

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw std::logic_error("Table: row width mismatch");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

namespace detail {

inline std::string format_real(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
  return buffer;
}

inline std::string csv_cell(const Cell& cell, int precision) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d, precision);
  return std::get<std::string>(cell);
}

inline nlohmann::ordered_json json_cell(const Cell& cell, int precision) {
  if (std::holds_alternative<std::monostate>(cell)) return nullptr;
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    // Round through the formatted text so precision is honored and the
    // serialization stays deterministic. Non-finite values become null.
    const double rounded = std::strtod(format_real(*d, precision).c_str(), nullptr);
    return rounded;
  }
  return std::get<std::string>(cell);
}

}  // namespace detail

inline void write_table(const Table& table, const nlohmann::ordered_json& metadata,
                        const OutputSpec& spec, std::ostream& out) {
  if (spec.format == OutputFormat::Csv) {
    for (size_t c = 0; c < table.columns().size(); ++c)
      out << (c ? "," : "") << table.columns()[c];
    out << '\n';
    for (const auto& row : table.rows()) {
      for (size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << detail::csv_cell(row[c], spec.precision);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata;
  doc["columns"] = table.columns();
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json obj;
    for (size_t c = 0; c < row.size(); ++c)
      obj[table.columns()[c]] = detail::json_cell(row[c], spec.precision);
    rows.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

/// Writes to spec.out_path (or stdout when empty). Throws std::runtime_error
/// when the file cannot be opened.
inline void emit(const Table& table, const nlohmann::ordered_json& metadata,
                 const OutputSpec& spec) {
  if (spec.out_path.empty()) {
    write_table(table, metadata, spec, std::cout);
    return;
  }
  std::ofstream file(spec.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + spec.out_path);
  write_table(table, metadata, spec, file);
}

}  // namespace fixsum
