#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "torusdisp/point_set.hpp"

namespace torusdisp {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace detail

// CSV point sets: one row per point, comma-separated coordinates. Blank
// lines and lines starting with '#' are skipped; one leading header row is
// skipped when its fields do not parse as numbers. Coordinates are wrapped
// onto the torus, so raw values outside [0,1) are accepted.
inline PointSet<double> read_points(std::istream& in, std::optional<int> declared_dim = {}) {
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::vector<std::string> fields = detail::split_csv(t);
    std::vector<double> row;
    row.reserve(fields.size());
    bool ok = true;
    for (const std::string& f : fields) {
      double v = 0;
      if (!detail::parse_double(f, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      if (first_data_line) {  // header row
        first_data_line = false;
        continue;
      }
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": cannot parse coordinate row");
    }
    first_data_line = false;
    rows.push_back(std::move(row));
  }
  return canonicalize<double>(rows, declared_dim);
}

inline PointSet<double> read_points_file(const std::string& path,
                                         std::optional<int> declared_dim = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  try {
    return read_points(in, declared_dim);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Shortest round-trip decimal form per coordinate.
inline void write_points(std::ostream& out, const PointSet<double>& p) {
  char buf[64];
  for (int i = 0; i < p.size(); ++i) {
    for (int a = 0; a < p.dim(); ++a) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p.coord(i, a));
      if (ec != std::errc()) throw std::runtime_error("coordinate formatting failed");
      if (a) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace torusdisp
