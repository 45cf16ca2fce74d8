#include "cli/fixtures.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <algorithm>
#include <stdexcept>

#include "cwglt/cw_analysis.hpp"
#include "cwglt/distribution.hpp"
#include "cwglt/symbols.hpp"

namespace cwglt::cli {

namespace {

constexpr int kGrid = 1000;
constexpr std::uint64_t kPerturbationSeed = 20240607;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double adherence_gap(const ModelParams& p, int n_sites, const MonotoneRearrangement& psi) {
  return compare_quantiles(tridiag_eigenvalues(cw_restricted(n_sites, p)), psi).sup_quantile_gap;
}

// Singular values of D_n(a) T_n(e^{i theta}) against the rearrangement of |a|.
double glt1_gap(int n) {
  auto a = [](double x) { return std::sqrt(std::max(0.0, (1.0 - x) * x)); };
  FourierCoefficients shift;
  shift.entries[1] = complex{1.0, 0.0};
  const ComplexMatrix m = to_complex(diag_sampling(a, static_cast<std::size_t>(n))) *
                          toeplitz_from_coeffs(shift, static_cast<std::size_t>(n));
  auto sv = singular_values(m);
  std::sort(sv.begin(), sv.end());
  SeparableSymbol abs_a;
  abs_a.terms.push_back({a, [](double) { return complex{1.0, 0.0}; }});
  const auto psi = rearrangement(sample_grid(abs_a, kGrid, 64), kGrid, 64);
  return compare_quantiles(EigenResult{sv, kDefaultEigenTol}, psi).sup_quantile_gap;
}

}  // namespace

nlohmann::ordered_json derived_fixtures() {
  nlohmann::ordered_json doc;
  doc["generated_utc"] = utc_now();
  doc["generator"] = "cwglt --fixtures";
  doc["solver_tol"] = kDefaultEigenTol;
  doc["symbol_grid"] = {kGrid, kGrid};

  // Berezin witness of the C/N bound.
  {
    const std::vector<int> sizes{20, 40, 80, 160};
    const SphereGrid grid{};
    std::vector<double> scaled;
    double worst = 0.0;
    for (int n : sizes) {
      const double v = n * berezin_deviation(n, Spin(n), ModelParams{1.0, 1.0}, grid);
      scaled.push_back(v);
      worst = std::max(worst, v);
    }
    auto& b = doc["berezin"];
    b["params"] = {1.0, 1.0};
    b["sphere_grid"] = {grid.n_theta, grid.n_phi};
    b["sizes"] = sizes;
    b["n_times_deviation"] = scaled;
    // Recorded constant: measured maximum rounded up to 1e-6.
    b["bound"] = std::ceil(worst * 1e6) / 1e6;
  }

  // Restricted spectrum vs rearranged symbol.
  {
    auto& adh = doc["adherence"];
    for (const ModelParams& p : {ModelParams{1.0, 1.0}, ModelParams{1.0, 0.5}}) {
      const auto psi = rearrangement(sample_grid(cw_symbol(p), kGrid, kGrid), kGrid, kGrid);
      nlohmann::ordered_json row;
      row["gamma"] = p.gamma;
      row["bfield"] = p.bfield;
      row["gap_N40"] = adherence_gap(p, 40, psi);
      row["gap_N320"] = adherence_gap(p, 320, psi);
      adh.push_back(row);
    }
  }

  {
    const ModelParams p{1.0, 1.0};
    const auto a = from_eigenvalues(tridiag_eigenvalues(fd_schrodinger(320, p)));
    const auto b = from_eigenvalues(tridiag_eigenvalues(cw_restricted(320, p)));
    doc["fd_vs_restricted_ks_N320"] = ks_distance(a, b);
  }

  doc["glt1_gap"] = {{"n", {256, 512, 1024}}, {"gap", {glt1_gap(256), glt1_gap(512), glt1_gap(1024)}}};

  {
    const auto r = perturbation_robustness(cw_restricted(320, ModelParams{1.0, 1.0}), 5, kPerturbationSeed);
    doc["perturbation"] = {{"seed", kPerturbationSeed}, {"rank", 5}, {"ks_distance", r.ks_distance}};
  }

  {
    auto saw = [](double t) { return complex{t, 0.0}; };
    const complex lo = fourier_coeffs(saw, 1, 1 << 16).at(1);
    const complex hi = fourier_coeffs(saw, 1, 1 << 17).at(1);
    doc["sawtooth_f1"] = {{"re", hi.real()}, {"im", hi.imag()}, {"resolution_gap", std::abs(hi - lo)}};
  }
  return doc;
}

void write_fixtures(const std::string& path) {
  const auto doc = derived_fixtures();
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open fixtures file '" + path + "'");
  file << doc.dump(2) << '\n';
}

}  // namespace cwglt::cli
