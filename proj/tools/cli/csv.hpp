#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace cwglt::cli {

/// Shortest round-trip-safe rendering: 17 significant digits.
std::string format_double(double v);

/// Writes one CSV row; values are already formatted.
void write_row(std::ostream& out, const std::vector<std::string>& cells);

struct SpectrumRow {
  long index = 0;
  double eigenvalue = 0.0;
  double weight = 0.0;
};

/// Parses the `index,eigenvalue,weight` contract; skips `#` comment lines.
/// Throws std::runtime_error naming the offending line.
std::vector<SpectrumRow> read_spectrum_csv(std::istream& in);

}  // namespace cwglt::cli
