#pragma once

// CSV tables and JSON check lists for experiment suites. Numbers are printed
// with std::to_chars, 15 significant digits, independent of the locale.

#include <charconv>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hardylab::report {

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("Table: row width does not match header");
    rows_.push_back(std::move(row));
  }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + format_cell(header_[i]);
    out += '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_cell(r[i]);
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

struct Check {
  std::string name;
  double value;
  double expected;   ///< NaN when the check is a bound or a predicate
  double tolerance;  ///< NaN when not applicable
  bool pass;
};

/// One suite: named tables plus pass/fail checks.
class Suite {
 public:
  Suite(std::string name, int dimension) : name_(std::move(name)), dim_(dimension) {}

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }

  Table& table(const std::string& name, std::vector<std::string> header) {
    tables_.emplace_back(name, Table(std::move(header)));
    return tables_.back().second;
  }

  /// |value - expected| <= tolerance.
  bool near(std::string name, double value, double expected, double tolerance) {
    const bool ok = std::isfinite(value) && std::fabs(value - expected) <= tolerance;
    checks_.push_back({std::move(name), value, expected, tolerance, ok});
    return checks_.back().pass;
  }
  /// |value - expected| <= tolerance * |expected|.
  bool near_rel(std::string name, double value, double expected, double rel) {
    return near(std::move(name), value, expected, rel * std::fabs(expected));
  }
  bool require(std::string name, double value, bool pass, double expected = NAN, double tolerance = NAN) {
    checks_.push_back({std::move(name), value, expected, tolerance, pass});
    return checks_.back().pass;
  }

  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json json() const {
    nlohmann::json rows = nlohmann::json::array();
    auto num = [](double x) -> nlohmann::json {
      if (std::isfinite(x)) return x;
      return nullptr;
    };
    for (const auto& c : checks_) {
      rows.push_back({{"name", c.name},
                      {"value", num(c.value)},
                      {"expected", num(c.expected)},
                      {"tolerance", num(c.tolerance)},
                      {"pass", c.pass}});
    }
    return {{"suite", name_}, {"dimension", dim_}, {"rows", rows}};
  }

  /// Writes <suite>_<table>.csv for each table, <suite>_checks.csv and <suite>.json.
  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
      std::ofstream f(p, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + p.string());
      f << text;
    };
    for (const auto& [tname, t] : tables_) put(dir / (name_ + "_" + tname + ".csv"), t.csv());
    Table checks({"name", "value", "expected", "tolerance", "pass"});
    for (const auto& c : checks_) checks.add({c.name, c.value, c.expected, c.tolerance, std::string(c.pass ? "PASS" : "FAIL")});
    put(dir / (name_ + "_checks.csv"), checks.csv());
    put(dir / (name_ + ".json"), json().dump(2) + "\n");
  }

 private:
  std::string name_;
  int dim_;
  std::deque<std::pair<std::string, Table>> tables_;
  std::vector<Check> checks_;
};

}  // namespace hardylab::report
