#include "cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cwglt::cli {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("spectrum csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::vector<SpectrumRow> read_spectrum_csv(std::istream& in) {
  std::vector<SpectrumRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "index,eigenvalue,weight")
        throw std::runtime_error("spectrum csv line " + std::to_string(line_no) + ": unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 3)
      throw std::runtime_error("spectrum csv line " + std::to_string(line_no) + ": expected 3 fields");
    SpectrumRow row;
    row.index = static_cast<long>(parse_double(cells[0], line_no));
    row.eigenvalue = parse_double(cells[1], line_no);
    row.weight = parse_double(cells[2], line_no);
    rows.push_back(row);
  }
  if (!header_seen) throw std::runtime_error("spectrum csv: missing header");
  return rows;
}

}  // namespace cwglt::cli
