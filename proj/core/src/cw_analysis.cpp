#include "cwglt/cw_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cwglt/eigen.hpp"
#include "cwglt/parallel.hpp"

namespace cwglt {

namespace {

constexpr double kPi = std::numbers::pi;

void require_sites(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("number of sites N must be >= 1");
}

// Per-sector probability weights C(J,N)(2J+1)/2^N, normalized in log space.
// Entry k is the total mass of sector k (all 2J+1 states together).
std::vector<double> sector_masses(const std::vector<SpinSectorSpec>& sectors) {
  std::vector<double> log_mass(sectors.size());
  for (std::size_t k = 0; k < sectors.size(); ++k)
    log_mass[k] = sectors[k].log_multiplicity + std::log(static_cast<double>(sectors[k].dim));
  const double top = *std::max_element(log_mass.begin(), log_mass.end());
  std::vector<double> mass(sectors.size());
  double total = 0.0;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    mass[k] = std::exp(log_mass[k] - top);
    total += mass[k];
  }
  for (double& m : mass) m /= total;
  return mass;
}

}  // namespace

WeightedSpectrum full_cw_spectrum(int n_sites, const ModelParams& params) {
  require_sites(n_sites);
  params.validate();
  if (n_sites > kFullSpectrumMaxSites)
    throw DomainError("full_cw_spectrum refuses N=" + std::to_string(n_sites) + " (limit " +
                      std::to_string(kFullSpectrumMaxSites) + ")");

  const auto sectors = sector_list(n_sites);
  const auto masses = sector_masses(sectors);
  std::vector<std::vector<double>> block_values(sectors.size());
  parallel_for(sectors.size(), [&](std::size_t k) {
    block_values[k] = tridiag_eigenvalues(spin_block(n_sites, sectors[k].spin, params)).values;
  });

  std::vector<double> values;
  std::vector<double> weights;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const double per_state = masses[k] / static_cast<double>(sectors[k].dim);
    for (double v : block_values[k]) {
      values.push_back(v);
      weights.push_back(per_state);
    }
  }
  return WeightedSpectrum(std::move(values), std::move(weights), static_cast<double>(n_sites));
}

double NuMeasure::total_mass() const {
  double acc = 0.0;
  for (const auto& atom : atoms) acc += atom.mass;
  return acc;
}

double NuMeasure::mass_in(const std::vector<Interval>& intervals) const {
  double acc = 0.0;
  for (const auto& atom : atoms) {
    const bool inside = std::any_of(intervals.begin(), intervals.end(),
                                    [&](const Interval& iv) { return atom.u >= iv.lo && atom.u < iv.hi; });
    if (inside) acc += atom.mass;
  }
  return acc;
}

double NuMeasure::tail_mass(double eps) const {
  double acc = 0.0;
  for (const auto& atom : atoms)
    if (atom.u >= eps) acc += atom.mass;
  return acc;
}

NuMeasure nu_measure(int n_sites) {
  require_sites(n_sites);
  const auto sectors = sector_list(n_sites);
  const auto masses = sector_masses(sectors);
  NuMeasure nu;
  nu.n_sites = n_sites;
  nu.atoms.reserve(sectors.size());
  for (std::size_t k = 0; k < sectors.size(); ++k)
    nu.atoms.push_back({static_cast<double>(sectors[k].spin.twice()) / n_sites, masses[k]});
  return nu;
}

double chernoff_bound(int n_sites, double eps) {
  require_sites(n_sites);
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("chernoff_bound: eps must lie in (0, 1)");
  const double np1 = n_sites + 1.0;
  const double a = n_sites * eps + 1.0;
  return 2.0 * np1 * np1 * std::exp(-(a * a) / (6.0 * np1));
}

double CoherentState::norm() const {
  double acc = 0.0;
  for (const auto& c : amplitudes) acc += std::norm(c);
  return std::sqrt(acc);
}

double CoherentState::expect_j3() const {
  const int twice = spin.twice();
  double acc = 0.0;
  for (int i = 0; i <= twice; ++i) acc += 0.5 * (2 * i - twice) * std::norm(amplitudes[static_cast<std::size_t>(i)]);
  return acc;
}

double CoherentState::expect_j1() const {
  // J1 = (J+ + J-)/2, <J1> = Re <J+>, <m+1|J+|m> = sqrt((2J - i)(i + 1)) with i = J + m.
  const int twice = spin.twice();
  complex acc{};
  for (int i = 0; i < twice; ++i) {
    const double ladder = std::sqrt(static_cast<double>(twice - i) * (i + 1.0));
    acc += std::conj(amplitudes[static_cast<std::size_t>(i) + 1]) * amplitudes[static_cast<std::size_t>(i)] * ladder;
  }
  return acc.real();
}

CoherentState coherent_state(Spin j, double theta_sph, double phi_sph) {
  if (!(theta_sph >= 0.0 && theta_sph <= kPi)) throw DomainError("coherent_state: theta must lie in [0, pi]");
  if (!(phi_sph >= 0.0 && phi_sph < 2.0 * kPi)) throw DomainError("coherent_state: phi must lie in [0, 2pi)");

  const int twice = j.twice();
  const double c = std::cos(0.5 * theta_sph);
  const double s = std::sin(0.5 * theta_sph);
  CoherentState state{j, theta_sph, phi_sph, std::vector<complex>(static_cast<std::size_t>(twice) + 1)};
  const double log_top = std::lgamma(twice + 1.0);
  for (int i = 0; i <= twice; ++i) {
    // i = J + m
    const int lower = twice - i;
    double magnitude;
    if (c > 0.0 && s > 0.0) {
      const double log_binom = log_top - std::lgamma(i + 1.0) - std::lgamma(lower + 1.0);
      magnitude = std::exp(0.5 * log_binom + i * std::log(c) + lower * std::log(s));
    } else if (c > 0.0) {
      magnitude = lower == 0 ? 1.0 : 0.0;
    } else {
      magnitude = i == 0 ? 1.0 : 0.0;
    }
    state.amplitudes[static_cast<std::size_t>(i)] = std::polar(magnitude, lower * phi_sph);
  }
  return state;
}

double berezin_symbol(const SymTridiagonal& block, const CoherentState& state) {
  if (block.size() != state.amplitudes.size())
    throw std::invalid_argument("berezin_symbol: block dimension " + std::to_string(block.size()) +
                                " does not match 2J+1 = " + std::to_string(state.amplitudes.size()));
  const auto& amp = state.amplitudes;
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) acc += block.diag()[i] * std::norm(amp[i]);
  for (std::size_t i = 0; i + 1 < amp.size(); ++i)
    acc += 2.0 * block.offdiag()[i] * (std::conj(amp[i]) * amp[i + 1]).real();
  return acc;
}

double berezin_deviation(int n_sites, Spin j, const ModelParams& params, SphereGrid grid) {
  if (grid.n_theta < 2 || grid.n_phi < 1) throw std::invalid_argument("berezin_deviation: sphere grid too small");
  const SymTridiagonal block = spin_block(n_sites, j, params);
  const double u = static_cast<double>(j.twice()) / n_sites;
  double sup = 0.0;
  for (int a = 0; a < grid.n_theta; ++a) {
    const double theta = kPi * a / (grid.n_theta - 1);
    for (int b = 0; b < grid.n_phi; ++b) {
      const double phi = 2.0 * kPi * b / grid.n_phi;
      const double quantum = berezin_symbol(block, coherent_state(j, theta, phi));
      sup = std::max(sup, std::abs(quantum - classical_h0(u, theta, phi, params)));
    }
  }
  return sup;
}

namespace {

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre rule{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int k = 0; k < n; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(k)] = x;
    rule.weights[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

double resolution_identity_check(Spin j, int n_theta, int n_phi) {
  const int twice = j.twice();
  if (n_theta < twice + 2)
    throw std::invalid_argument("resolution_identity_check: need at least 2J+2 nodes in cos(theta)");
  if (n_phi < 2 * twice + 2)
    throw std::invalid_argument("resolution_identity_check: need at least 4J+2 nodes in phi");

  const auto dim = static_cast<std::size_t>(j.dim());
  const auto rule = gauss_legendre(n_theta);
  ComplexMatrix integral(dim, dim);
  const double phi_weight = 2.0 * kPi / n_phi;
  for (int a = 0; a < n_theta; ++a) {
    const double theta = std::acos(std::clamp(rule.nodes[static_cast<std::size_t>(a)], -1.0, 1.0));
    for (int b = 0; b < n_phi; ++b) {
      const double phi = phi_weight * b;
      const auto state = coherent_state(j, theta, phi);
      const double w = rule.weights[static_cast<std::size_t>(a)] * phi_weight;
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          integral(r, c) += w * state.amplitudes[r] * std::conj(state.amplitudes[c]);
    }
  }
  const double scale = j.dim() / (4.0 * kPi);

  // Hermitian deviation D = scale * integral - 1 embedded as a real symmetric
  // matrix of twice the size with the same spectrum.
  DenseMatrix embedded(2 * dim, 2 * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      complex d = scale * integral(r, c);
      if (r == c) d -= 1.0;
      embedded(r, c) = d.real();
      embedded(r + dim, c + dim) = d.real();
      embedded(r, c + dim) = -d.imag();
      embedded(r + dim, c) = d.imag();
    }
  // Rounding can leave asymmetry at the 1e-16 level; symmetrize explicitly.
  for (std::size_t r = 0; r < 2 * dim; ++r)
    for (std::size_t c = r + 1; c < 2 * dim; ++c) {
      const double avg = 0.5 * (embedded(r, c) + embedded(c, r));
      embedded(r, c) = avg;
      embedded(c, r) = avg;
    }
  const auto eig = dense_sym_eigenvalues(embedded);
  return std::max(std::abs(eig.min()), std::abs(eig.max()));
}

std::vector<double> zero_dist_trace_test(const std::vector<int>& sizes, const ModelParams& params,
                                         const std::function<double(double)>& F) {
  std::vector<double> out;
  out.reserve(sizes.size());
  for (int n : sizes) out.push_back(empirical_functional(full_cw_spectrum(n, params), F));
  return out;
}

std::vector<int> default_extremal_sizes() { return {40, 80, 160, 320}; }

std::vector<ExtremalPair> extremal_eigenvalues(const ModelParams& params, const std::vector<int>& sizes) {
  std::vector<ExtremalPair> out;
  out.reserve(sizes.size());
  for (int size : sizes) {
    if (size < 2) throw std::invalid_argument("extremal sizes are matrix sizes N+1 and must be >= 2");
    const auto eig = tridiag_eigenvalues(cw_restricted(size - 1, params));
    out.push_back({size, eig.min(), eig.max()});
  }
  return out;
}

namespace {

// -slope of the least-squares line through (log10 size, log10 y).
double decay_exponent(const std::vector<int>& sizes, const std::vector<double>& ys) {
  if (sizes.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log10(static_cast<double>(sizes[i]));
    const double y = std::log10(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ConvergenceTable extremal_convergence(const ModelParams& params, const std::vector<int>& sizes,
                                      double m_used, double M_used) {
  if (sizes.empty()) throw std::invalid_argument("extremal_convergence: no sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
    throw std::invalid_argument("extremal_convergence: sizes must be strictly ascending");
  if (!(m_used <= M_used)) throw std::invalid_argument("extremal_convergence: need m <= M");

  const auto pairs = extremal_eigenvalues(params, sizes);
  ConvergenceTable table;
  table.m_used = m_used;
  table.M_used = M_used;
  std::vector<double> taus;
  std::vector<double> tau_hats;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    ConvergenceRow row;
    row.size = pairs[j].size;
    row.lambda_min = pairs[j].lambda_min;
    row.lambda_max = pairs[j].lambda_max;
    row.tau = row.lambda_min - m_used;
    row.tau_hat = M_used - row.lambda_max;
    if (!(row.tau > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "extremal_convergence: row " << j << " (size " << row.size << "): tau = lambda_min - m = "
          << row.lambda_min << " - (" << m_used << ") = " << row.tau << " <= 0; m lies above lambda_min";
      throw DomainError(msg.str());
    }
    if (!(row.tau_hat > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "extremal_convergence: row " << j << " (size " << row.size << "): tau_hat = M - lambda_max = "
          << M_used << " - (" << row.lambda_max << ") = " << row.tau_hat << " <= 0; M lies below lambda_max";
      throw DomainError(msg.str());
    }
    taus.push_back(row.tau);
    tau_hats.push_back(row.tau_hat);
    table.rows.push_back(row);
  }
  for (std::size_t j = 0; j + 1 < table.rows.size(); ++j) {
    table.rows[j].alpha = std::log10(taus[j] / taus[j + 1]);
    table.rows[j].beta = std::log10(tau_hats[j] / tau_hats[j + 1]);
  }
  table.p_min = decay_exponent(sizes, taus);
  table.p_max = decay_exponent(sizes, tau_hats);
  return table;
}

}  // namespace cwglt
