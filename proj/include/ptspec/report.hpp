#pragma once

#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ptspec/common.hpp"

namespace ptspec::report {

/// Locale-independent shortest representation with `digits` significant digits.
inline std::string format_number(double v, int digits = 12) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

/// theta as "p*pi/q" text when theta/pi is a fraction with q <= max_den,
/// e.g. "0", "pi/2", "15pi/14".
inline std::optional<std::string> pi_fraction(double theta, int max_den, double tol = 1e-12) {
  const double t = theta / pi;
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::round(t * q);
    if (std::abs(t * q - p) > tol * q) continue;
    const long num = long(p);
    const long g = std::gcd(num, long(q));
    const long rn = g ? num / g : num;
    const long rq = g ? q / g : q;
    if (rn == 0) return "0";
    std::string s = rn == 1 ? "" : rn == -1 ? "-" : std::to_string(rn);
    s += "pi";
    if (rq != 1) s += "/" + std::to_string(rq);
    return s;
  }
  return std::nullopt;
}

/// Parses "a..b" or a single integer "a" into an inclusive range.
inline std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error("invalid range: " + text);
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int a = to_int(std::string_view(text).substr(0, dots));
  const int b = to_int(std::string_view(text).substr(dots + 2));
  if (a < 0 || b < a) throw Error("invalid range: " + text);
  return {a, b};
}

using Cell = std::variant<std::string, double, long>;

/// A rectangular table that renders to CSV (header row, '.' decimals) or to
/// a JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int digits = 12;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("report: row width does not match the header");
    rows.push_back(std::move(row));
  }

  std::string text(const Cell& c) const {
    if (auto s = std::get_if<std::string>(&c)) return *s;
    if (auto d = std::get_if<double>(&c)) return format_number(*d, digits);
    return std::to_string(std::get<long>(c));
  }

  void write_csv(std::ostream& os) const {
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    };
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << quote(columns[i]);
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote(text(row[i]));
      os << '\n';
    }
  }

  /// Numbers are emitted through their formatted text so JSON and CSV carry
  /// identical digits.
  nlohmann::ordered_json to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (auto s = std::get_if<std::string>(&row[i]))
          obj[columns[i]] = *s;
        else if (auto l = std::get_if<long>(&row[i]))
          obj[columns[i]] = *l;
        else if (const double d = std::get<double>(row[i]); std::isfinite(d))
          obj[columns[i]] = nlohmann::ordered_json::parse(format_number(d, digits));
        else
          obj[columns[i]] = nullptr;
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

}  // namespace ptspec::report
