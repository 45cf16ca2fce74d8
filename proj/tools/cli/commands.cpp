#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/csv.hpp"
#include "cli/fixtures.hpp"
#include "cwglt/cw_analysis.hpp"
#include "cwglt/distribution.hpp"
#include "cwglt/symbols.hpp"
#include "json.hpp"

namespace cwglt::cli {

namespace {

constexpr const char* kVersion = "0.3.0";

std::string render(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json to_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

std::vector<int> require_sizes(const RunConfig& cfg, const char* command) {
  if (cfg.sizes.empty()) throw UsageError(std::string(command) + " requires --size");
  return cfg.sizes;
}

int single_size(const RunConfig& cfg, const char* command) {
  const auto sizes = require_sizes(cfg, command);
  if (sizes.size() != 1) throw UsageError(std::string(command) + " takes exactly one size");
  return sizes.front();
}

MonotoneRearrangement symbol_rearrangement(const SeparableSymbol& sym, const RunConfig& cfg) {
  return rearrangement(sample_grid(sym, cfg.grid_nx, cfg.grid_ntheta), cfg.grid_nx, cfg.grid_ntheta);
}

}  // namespace

void RunConfig::validate() const {
  if (!std::isfinite(gamma) || !(gamma > 0.0)) throw UsageError("gamma must be > 0");
  if (!std::isfinite(bfield)) throw UsageError("bfield must be finite");
  for (int s : sizes)
    if (s < 1) throw UsageError("size must be ≥ 1");
  if (grid_nx < 64 || grid_ntheta < 64) throw UsageError("grid must be ≥ 64 in each direction");
  if (!std::isfinite(tol) || !(tol > 0.0)) throw UsageError("tol must be > 0");
}

void write_csv(const Table& table, std::ostream& out) {
  write_row(out, table.columns);
  std::vector<std::string> cells;
  for (const auto& row : table.rows) {
    cells.clear();
    for (const auto& cell : row) cells.push_back(render(cell));
    write_row(out, cells);
  }
  for (const auto& [key, value] : table.notes) out << "# " << key << '=' << render(value) << '\n';
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  if (table.rows.size() == 1 && table.columns.size() == table.rows.front().size()) {
    // Single-row reports are written as one flat object.
    for (std::size_t c = 0; c < table.columns.size(); ++c) doc[table.columns[c]] = to_json(table.rows[0][c]);
  } else {
    doc["columns"] = table.columns;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      auto& r = rows.emplace_back(nlohmann::ordered_json::array());
      for (const auto& cell : row) r.push_back(to_json(cell));
    }
  }
  for (const auto& [key, value] : table.notes) doc[key] = to_json(value);
  out << doc.dump(2) << '\n';
}

Table cmd_spectrum(const RunConfig& cfg, SpectrumMode mode) {
  cfg.validate();
  const int n = single_size(cfg, "spectrum");
  const ModelParams params = cfg.params();
  Table t;
  t.columns = {"index", "eigenvalue", "weight"};

  WeightedSpectrum ws;
  const char* label = "restricted";
  switch (mode) {
    case SpectrumMode::restricted:
      ws = from_eigenvalues(tridiag_eigenvalues(cw_restricted(n, params), cfg.tol));
      break;
    case SpectrumMode::fd:
      label = "fd";
      ws = from_eigenvalues(tridiag_eigenvalues(fd_schrodinger(n, params), cfg.tol));
      break;
    case SpectrumMode::full:
      label = "full";
      ws = full_cw_spectrum(n, params);
      break;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i + 1), ws.values()[i], ws.weights()[i]});
    total += ws.weights()[i];
  }
  t.notes = {{"mode", std::string(label)},
             {"N", static_cast<long long>(n)},
             {"gamma", cfg.gamma},
             {"bfield", cfg.bfield},
             {"log2_dim", ws.log2_dim()},
             {"weight_sum", total}};
  return t;
}

Table cmd_rearrange(const RunConfig& cfg, const RearrangeOptions& opts) {
  cfg.validate();
  if (opts.points && *opts.points < 1) throw UsageError("points must be ≥ 1");
  const SeparableSymbol sym = opts.constant ? constant_symbol(*opts.constant) : cw_symbol(cfg.params());
  const auto psi = symbol_rearrangement(sym, cfg);

  Table t;
  t.columns = {"t", "psi"};
  if (opts.points) {
    // Ranks i/(P+1), the same ones compare uses for a P-point spectrum.
    const int p = *opts.points;
    for (int i = 1; i <= p; ++i) {
      const double ti = static_cast<double>(i) / static_cast<double>(p + 1);
      t.rows.push_back({ti, psi.quantile(ti)});
    }
  } else {
    const auto& sorted = psi.sorted_values();
    const double denom = sorted.size() > 1 ? static_cast<double>(sorted.size() - 1) : 1.0;
    t.rows.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) t.rows.push_back({static_cast<double>(k) / denom, sorted[k]});
  }
  t.notes = {{"symbol", sym.description},
             {"grid", std::to_string(cfg.grid_nx) + "x" + std::to_string(cfg.grid_ntheta)}};
  return t;
}

Table cmd_compare(const RunConfig& cfg) {
  cfg.validate();
  const int n = single_size(cfg, "compare");
  const auto eig = tridiag_eigenvalues(cw_restricted(n, cfg.params()), cfg.tol);
  const auto psi = symbol_rearrangement(cw_symbol(cfg.params()), cfg);
  const DistanceReport r = compare_quantiles(eig, psi);

  Table t;
  t.columns = {"sup_quantile_gap", "mean_abs_gap", "ks_distance", "n", "grid", "grid_nx", "grid_ntheta"};
  t.rows.push_back({r.sup_quantile_gap, r.mean_abs_gap, r.ks_distance, static_cast<long long>(eig.size()),
                    std::to_string(cfg.grid_nx) + "x" + std::to_string(cfg.grid_ntheta),
                    static_cast<long long>(cfg.grid_nx), static_cast<long long>(cfg.grid_ntheta)});
  return t;
}

namespace {

// Negated least-squares slope of log y against log size; NaN unless all y > 0.
double decay_exponent(const std::vector<ConvergenceRow>& rows, double ConvergenceRow::*field) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    if (!(r.*field > 0.0)) return std::nan("");
    const double x = std::log(static_cast<double>(r.size));
    const double y = std::log(r.*field);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double denom = n * sxx - sx * sx;
  if (rows.size() < 2 || denom == 0.0) return std::nan("");
  return -(n * sxy - sx * sy) / denom;
}

// Same quantities as extremal_convergence without its positivity check.
ConvergenceTable raw_convergence(const std::vector<ExtremalPair>& pairs, double m_used, double M_used) {
  ConvergenceTable table;
  table.m_used = m_used;
  table.M_used = M_used;
  for (const auto& p : pairs)
    table.rows.push_back({p.size, p.lambda_min, p.lambda_min - m_used, std::nullopt, p.lambda_max,
                          M_used - p.lambda_max, std::nullopt});
  for (std::size_t j = 0; j + 1 < table.rows.size(); ++j) {
    auto& r = table.rows[j];
    const auto& next = table.rows[j + 1];
    if (r.tau > 0.0 && next.tau > 0.0) r.alpha = std::log10(r.tau / next.tau);
    if (r.tau_hat > 0.0 && next.tau_hat > 0.0) r.beta = std::log10(r.tau_hat / next.tau_hat);
  }
  table.p_min = decay_exponent(table.rows, &ConvergenceRow::tau);
  table.p_max = decay_exponent(table.rows, &ConvergenceRow::tau_hat);
  return table;
}

}  // namespace

Table cmd_extremal(const RunConfig& cfg, const ExtremalOptions& opts) {
  cfg.validate();
  const ModelParams params = cfg.params();
  const auto sizes = cfg.sizes.empty() ? default_extremal_sizes() : cfg.sizes;
  for (int s : sizes)
    if (s < 2) throw UsageError("extremal sizes are matrix sizes N+1 and must be ≥ 2");

  const SymbolExtrema ext = symbol_extrema(cw_symbol(params));
  const double m_used = opts.m.value_or(ext.min);
  const double M_used = opts.M.value_or(ext.max);
  std::vector<ExtremalPair> pairs;
  auto convergence = [&](double m, double M) {
    if (!opts.allow_nonpositive) return extremal_convergence(params, sizes, m, M);
    if (pairs.empty()) pairs = extremal_eigenvalues(params, sizes);
    return raw_convergence(pairs, m, M);
  };
  const ConvergenceTable table = convergence(m_used, M_used);

  Table t;
  t.columns = {"size", "lambda_min", "tau", "alpha", "lambda_max", "tau_hat", "beta"};
  auto opt = [](const std::optional<double>& v) -> Cell { return v ? Cell{*v} : Cell{}; };
  auto num = [](double v) -> Cell { return std::isnan(v) ? Cell{} : Cell{v}; };
  for (const auto& row : table.rows)
    t.rows.push_back({static_cast<long long>(row.size), row.lambda_min, row.tau, opt(row.alpha), row.lambda_max,
                      row.tau_hat, opt(row.beta)});
  t.notes = {{"gamma", cfg.gamma},
             {"bfield", cfg.bfield},
             {"m_used", table.m_used},
             {"M_used", table.M_used},
             {"symbol_min", ext.min},
             {"symbol_max", ext.max},
             {"p_min", num(table.p_min)},
             {"p_max", num(table.p_max)}};

  // The beta column is sensitive to M; when M was overridden, also report
  // the column recomputed with the symbol's own maximum.
  if (opts.M && *opts.M != ext.max) {
    const ConvergenceTable alt = convergence(m_used, ext.max);
    std::string betas;
    for (std::size_t j = 0; j + 1 < alt.rows.size(); ++j) {
      if (j) betas += ';';
      if (alt.rows[j].beta) betas += format_double(*alt.rows[j].beta);
    }
    t.notes.emplace_back("beta_with_symbol_max", betas);
    t.notes.emplace_back("p_max_with_symbol_max", num(alt.p_max));
    t.notes.emplace_back("note", std::string("beta column uses M_used=") + format_double(*opts.M) +
                                     "; beta_with_symbol_max uses M=" + format_double(ext.max));
  }
  return t;
}

Table cmd_zerodist(const RunConfig& cfg, bool unit_f) {
  cfg.validate();
  if (cfg.sizes.empty()) throw UsageError("zerodist requires --sizes");
  const ModelParams params = cfg.params();
  Table t;
  t.columns = {"N", "schatten2", "mean_F2"};
  for (int n : cfg.sizes) {
    const WeightedSpectrum ws = full_cw_spectrum(n, params);
    const double mean = unit_f ? empirical_functional(ws, [](double) { return 1.0; })
                               : empirical_functional(ws, [](double y) { return y * y; });
    t.rows.push_back({static_cast<long long>(n), schatten_zero_test(ws, 2.0), mean});
  }
  t.notes = {{"gamma", cfg.gamma}, {"bfield", cfg.bfield}, {"F", std::string(unit_f ? "1" : "y^2")}};
  return t;
}

Table cmd_nu(const RunConfig& cfg) {
  cfg.validate();
  const int n = single_size(cfg, "nu");
  const NuMeasure nu = nu_measure(n);
  Table t;
  t.columns = {"u", "mass"};
  for (const auto& atom : nu.atoms) t.rows.push_back({atom.u, atom.mass});
  const double total = nu.total_mass();
  if (std::abs(total - 1.0) > 1e-10)
    throw DomainError("nu: total mass " + format_double(total) + " differs from 1 by more than 1e-10");
  t.notes = {{"N", static_cast<long long>(n)}, {"total_mass", total}};
  return t;
}

Table cmd_berezin(const RunConfig& cfg, const BerezinOptions& opts) {
  cfg.validate();
  if (opts.n_theta < 2 || opts.n_phi < 1) throw UsageError("sphere grid needs n_theta ≥ 2 and n_phi ≥ 1");
  const auto sizes = cfg.sizes.empty() ? std::vector<int>{20, 40, 80, 160} : cfg.sizes;
  Table t;
  t.columns = {"N", "J", "sup_deviation", "N_times_deviation"};
  double worst = 0.0;
  for (int n : sizes) {
    const Spin j(n);  // J = N/2
    const double dev = berezin_deviation(n, j, cfg.params(), {opts.n_theta, opts.n_phi});
    worst = std::max(worst, n * dev);
    t.rows.push_back({static_cast<long long>(n), j.value(), dev, n * dev});
  }
  t.notes = {{"gamma", cfg.gamma},
             {"bfield", cfg.bfield},
             {"sphere_grid", std::to_string(opts.n_theta) + "x" + std::to_string(opts.n_phi)},
             {"max_N_times_deviation", worst}};
  return t;
}

namespace {

void emit(const Table& table, const RunConfig& cfg, Format fallback, std::ostream& out) {
  const Format fmt = cfg.format.value_or(fallback);
  auto write = [&](std::ostream& os) {
    if (fmt == Format::json)
      write_json(table, os);
    else
      write_csv(table, os);
  };
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write(out);
    return;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw UsageError("cannot open output file '" + cfg.output_path + "'");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + cfg.output_path + "'");
}

void report_error(std::ostream& err, bool json, int code, const std::string& kind, const std::string& message) {
  if (json) {
    nlohmann::ordered_json doc;
    doc["error"] = kind;
    doc["message"] = message;
    doc["exit_code"] = code;
    err << doc.dump() << '\n';
  } else {
    err << "cwglt: " << message << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  bool json_errors = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--json-errors") json_errors = true;

  CLI::App app{"Spectral-distribution toolkit for the quantum Curie-Weiss model", "cwglt"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);
  std::string fixtures_path;
  app.add_option("--fixtures", fixtures_path, "Regenerate the derived-constants fixture file at PATH");
  app.add_flag("--json-errors", json_errors, "Write errors to stderr as one JSON object");

  RunConfig cfg;
  std::string format_name;
  int grid_both = 0;

  auto add_model = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--gamma", cfg.gamma, "Interaction strength Gamma > 0");
    sub->add_option("--bfield", cfg.bfield, "Transverse field B");
    sub->add_option("--tol", cfg.tol, "Eigensolver tolerance");
    sub->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");
    sub->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_size = [&](CLI::App* sub) {
    sub->add_option("--size", cfg.sizes, "Number of sites N")->expected(1);
  };
  auto add_sizes = [&](CLI::App* sub, const char* help) {
    sub->add_option("--sizes", cfg.sizes, help)->delimiter(',');
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-nx", cfg.grid_nx, "Symbol samples in x");
    sub->add_option("--grid-ntheta", cfg.grid_ntheta, "Symbol samples in theta");
    sub->add_option("--grid", grid_both, "Square symbol grid (sets both directions)");
  };

  std::string mode_name = "restricted";
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the restricted, full or finite-difference model");
  add_model(spectrum);
  add_size(spectrum);
  spectrum->add_option("--mode", mode_name, "restricted | full | fd")
      ->check(CLI::IsMember({"restricted", "full", "fd"}));

  RearrangeOptions rearrange_opts;
  auto* rearrange = app.add_subcommand("rearrange", "Monotone rearrangement of the sampled symbol");
  add_model(rearrange);
  add_grid(rearrange);
  rearrange->add_option("--points", rearrange_opts.points, "Quantile table at ranks i/(P+1), i = 1..P");
  rearrange->add_option("--constant-symbol", rearrange_opts.constant, "Debug: rearrange a constant symbol");

  auto* compare = app.add_subcommand("compare", "Distance between the restricted spectrum and the rearranged symbol");
  add_model(compare);
  add_size(compare);
  add_grid(compare);

  ExtremalOptions extremal_opts;
  auto* extremal = app.add_subcommand("extremal", "Extreme-eigenvalue convergence table");
  add_model(extremal);
  add_sizes(extremal, "Matrix sizes N+1 (default 40,80,160,320)");
  extremal->add_option("--m", extremal_opts.m, "Reference minimum (default: symbol minimum)");
  extremal->add_option("--M", extremal_opts.M, "Reference maximum (default: symbol maximum)");
  extremal->add_flag("--allow-nonpositive", extremal_opts.allow_nonpositive,
                     "Report rows with tau <= 0 or tau_hat <= 0 instead of failing");

  bool unit_f = false;
  auto* zerodist = app.add_subcommand("zerodist", "Zero-distribution test values of the normalized full model");
  add_model(zerodist);
  add_sizes(zerodist, "Numbers of sites N");
  zerodist->add_flag("--unit-F", unit_f, "Debug: use F = 1 in the mean_F2 column");

  auto* nu = app.add_subcommand("nu", "The measure nu_N on u = 2J/N");
  add_model(nu);
  add_size(nu);

  BerezinOptions berezin_opts;
  auto* berezin = app.add_subcommand("berezin", "Berezin-symbol deviation at J = N/2");
  add_model(berezin);
  add_sizes(berezin, "Numbers of sites N (default 20,40,80,160)");
  berezin->add_option("--n-theta", berezin_opts.n_theta, "Polar grid points");
  berezin->add_option("--n-phi", berezin_opts.n_phi, "Azimuthal grid points");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    if (!format_name.empty()) cfg.format = format_name == "json" ? Format::json : Format::csv;
    if (grid_both != 0) cfg.grid_nx = cfg.grid_ntheta = grid_both;

    if (!fixtures_path.empty()) {
      if (app.get_subcommands().size() != 0) throw UsageError("--fixtures cannot be combined with a subcommand");
      write_fixtures(fixtures_path);
      out << "wrote " << fixtures_path << '\n';
      return kExitOk;
    }

    if (spectrum->parsed()) {
      const auto mode = mode_name == "full" ? SpectrumMode::full
                        : mode_name == "fd" ? SpectrumMode::fd
                                            : SpectrumMode::restricted;
      emit(cmd_spectrum(cfg, mode), cfg, Format::csv, out);
    } else if (rearrange->parsed()) {
      emit(cmd_rearrange(cfg, rearrange_opts), cfg, Format::csv, out);
    } else if (compare->parsed()) {
      emit(cmd_compare(cfg), cfg, Format::json, out);
    } else if (extremal->parsed()) {
      emit(cmd_extremal(cfg, extremal_opts), cfg, Format::csv, out);
    } else if (zerodist->parsed()) {
      emit(cmd_zerodist(cfg, unit_f), cfg, Format::csv, out);
    } else if (nu->parsed()) {
      emit(cmd_nu(cfg), cfg, Format::csv, out);
    } else if (berezin->parsed()) {
      emit(cmd_berezin(cfg, berezin_opts), cfg, Format::csv, out);
    } else {
      throw UsageError("no subcommand given (try --help)");
    }
    return kExitOk;
  } catch (const UsageError& e) {
    report_error(err, json_errors, kExitUsage, "usage", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    report_error(err, json_errors, kExitUsage, "usage", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    report_error(err, json_errors, kExitDomain, "domain", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    report_error(err, json_errors, 1, "internal", e.what());
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cwglt");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cwglt::cli
