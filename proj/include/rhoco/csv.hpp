#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "rhoco/errors.hpp"

namespace rhoco {

/// Shortest round-trippable decimal form of a double. %.17g is exact but
/// noisy (0.1 -> 0.10000000000000001), so try rising precision first and
/// keep the first string that parses back bit-identically.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 16; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Append-only table with a fixed header; every write is deterministic so
/// output files diff cleanly between runs.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header)
      : header_(std::move(header)) {
    if (header_.empty()) throw ConfigError("CsvTable: empty header");
  }

  class Row {
  public:
    explicit Row(CsvTable& table) : table_(table) {}
    Row& cell(const std::string& s) {
      cells_.push_back(s);
      return *this;
    }
    Row& cell(const char* s) { return cell(std::string(s)); }
    Row& cell(double v) { return cell(format_double(v)); }
    Row& cell(int v) { return cell(std::to_string(v)); }
    Row& cell(long long v) { return cell(std::to_string(v)); }
    Row& cell(bool v) { return cell(std::string(v ? "1" : "0")); }
    ~Row() { table_.push(std::move(cells_)); }

    Row(const Row&) = delete;
    Row& operator=(const Row&) = delete;

  private:
    CsvTable& table_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }

  void push(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
      throw ConfigError("CsvTable: row width does not match header");
    rows_.push_back(std::move(cells));
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const {
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("CsvTable: cannot open " + path);
    write(out);
    if (!out) throw ConfigError("CsvTable: write failed for " + path);
  }

private:
  static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

} // namespace rhoco
