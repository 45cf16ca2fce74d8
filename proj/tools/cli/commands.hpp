#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cwglt/eigen.hpp"
#include "cwglt/matrices.hpp"

namespace cwglt::cli {

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

enum class Format { csv, json };

struct RunConfig {
  double gamma = 1.0;
  double bfield = 1.0;
  std::vector<int> sizes;
  int grid_nx = 1000;
  int grid_ntheta = 1000;
  double tol = kDefaultEigenTol;
  std::string output_path;  // empty or "-" means the caller's stream
  std::optional<Format> format;

  ModelParams params() const { return {gamma, bfield}; }
  /// Throws UsageError on the first violated invariant.
  void validate() const;
};

/// One cell of a result table; monostate renders as an empty field / null.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> notes;  // CSV footer lines "# key=value"
};

void write_csv(const Table& table, std::ostream& out);
/// {"columns": [...], "rows": [[...]], <notes as keys>}.
void write_json(const Table& table, std::ostream& out);

enum class SpectrumMode { restricted, full, fd };

Table cmd_spectrum(const RunConfig& cfg, SpectrumMode mode);

struct RearrangeOptions {
  std::optional<int> points;
  std::optional<double> constant;  // debug: sample a constant symbol instead
};
Table cmd_rearrange(const RunConfig& cfg, const RearrangeOptions& opts);

/// Flat report: sup_quantile_gap, mean_abs_gap, ks_distance, n, grid.
Table cmd_compare(const RunConfig& cfg);

struct ExtremalOptions {
  std::optional<double> m;
  std::optional<double> M;
  /// Report tau <= 0 rows instead of failing; alpha/beta left empty where undefined.
  bool allow_nonpositive = false;
};
Table cmd_extremal(const RunConfig& cfg, const ExtremalOptions& opts);

Table cmd_zerodist(const RunConfig& cfg, bool unit_f);
Table cmd_nu(const RunConfig& cfg);

struct BerezinOptions {
  int n_theta = 33;
  int n_phi = 32;
};
Table cmd_berezin(const RunConfig& cfg, const BerezinOptions& opts);

/// Full front end: parses argv, runs one subcommand, maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwglt::cli
