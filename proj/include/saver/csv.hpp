#ifndef SAVER_CSV_HPP
#define SAVER_CSV_HPP

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "saver/common.hpp"

namespace saver {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& token, const std::string& path, std::size_t line) {
  std::string t = trim(token);
  if (t.empty()) {
    throw parse_error(path + ":" + std::to_string(line) + ": empty value");
  }
  // std::from_chars<double> handles the common cases; strtod is the
  // fallback for hex floats and locales that from_chars rejects.
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    char* end = nullptr;
    value = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || end == t.c_str()) {
      throw parse_error(path + ":" + std::to_string(line) + ": cannot parse \"" + t +
                        "\" as a number");
    }
  }
  return value;
}

// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw state_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace detail

// One real value per line. A single leading "g" header line is tolerated.
inline std::vector<double> read_values_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::vector<double> values;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string t = detail::trim(raw);
    if (t.empty()) continue;
    if (line == 1 && t == "g") continue;
    values.push_back(detail::parse_double(t, path, line));
  }
  if (values.empty()) throw parse_error(path + ": no values found");
  return values;
}

// One point per line, comma-separated coordinates. A non-numeric first
// line is treated as a header. All rows must share a dimension.
inline std::vector<Point> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::vector<Point> points;
  std::string raw;
  std::size_t line = 0;
  Eigen::Index dim = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string t = detail::trim(raw);
    if (t.empty()) continue;
    std::vector<std::string> tokens;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);
    if (points.empty() && line == 1) {
      // Header detection: reject the row only if its first token is not a number.
      std::string first = detail::trim(tokens.empty() ? "" : tokens[0]);
      double probe = 0.0;
      auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), probe);
      char* end = nullptr;
      bool numeric = (ec == std::errc() && ptr == first.data() + first.size());
      if (!numeric) {
        std::strtod(first.c_str(), &end);
        numeric = (end == first.c_str() + first.size() && end != first.c_str());
      }
      if (!numeric) continue;
    }
    Point p(static_cast<Eigen::Index>(tokens.size()));
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      p(static_cast<Eigen::Index>(i)) = detail::parse_double(tokens[i], path, line);
    }
    if (dim == 0) {
      dim = p.size();
    } else if (p.size() != dim) {
      throw parse_error(path + ":" + std::to_string(line) + ": expected " +
                        std::to_string(dim) + " coordinates, got " + std::to_string(p.size()));
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw parse_error(path + ": no points found");
  return points;
}

// Writers emit shortest round-trip decimals so a rewrite of the same data
// is byte-identical.
inline void write_values_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  for (double v : values) out << detail::format_double(v) << '\n';
  if (!out) throw io_error("failed writing " + path);
}

inline void write_points_csv(const std::string& path, const std::vector<Point>& points) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  for (const Point& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i > 0) out << ',';
      out << detail::format_double(p(i));
    }
    out << '\n';
  }
  if (!out) throw io_error("failed writing " + path);
}

}  // namespace saver

#endif  // SAVER_CSV_HPP
