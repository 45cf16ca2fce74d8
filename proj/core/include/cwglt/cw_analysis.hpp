#pragma once

// Full Curie-Weiss model through its SU(2) sectors: exact weighted spectra,
// the measure nu_N on u = 2J/N with its Chernoff tail bound, spin coherent
// states and Berezin symbols, and the extremal-eigenvalue convergence harness
// for the restricted model.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cwglt/distribution.hpp"
#include "cwglt/matrices.hpp"

namespace cwglt {

inline constexpr int kFullSpectrumMaxSites = 2000;

/// Eigenvalues of every sector block, each weighted C(J,N)/2^N.
/// Sectors are diagonalized in parallel and merged in ascending J.
WeightedSpectrum full_cw_spectrum(int n_sites, const ModelParams& params);

/// Half-open interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct NuAtom {
  double u = 0.0;
  double mass = 0.0;
};

/// nu_N: mass C(J,N)(2J+1)/2^N at u = 2J/N.
struct NuMeasure {
  int n_sites = 0;
  std::vector<NuAtom> atoms;  // ascending u

  double total_mass() const;
  /// Mass of a finite union of half-open intervals (overlaps counted once).
  double mass_in(const std::vector<Interval>& intervals) const;
  /// nu_N([eps, 1]).
  double tail_mass(double eps) const;
};

NuMeasure nu_measure(int n_sites);

/// 2 (N+1)^2 exp(-(N eps + 1)^2 / (6 (N+1))), a bound on nu_N([eps, 1]).
double chernoff_bound(int n_sites, double eps);

/// Spin coherent vector |J, Omega> in the J3 basis, m = -J..J.
struct CoherentState {
  Spin spin;
  double theta_sph = 0.0;
  double phi_sph = 0.0;
  std::vector<complex> amplitudes;

  double norm() const;
  double expect_j3() const;
  double expect_j1() const;
};

/// Amplitude at m: binom(2J, J+m)^{1/2} cos(theta/2)^{J+m} sin(theta/2)^{J-m} e^{i(J-m)phi}.
CoherentState coherent_state(Spin j, double theta_sph, double phi_sph);

/// <Omega| block |Omega>.
double berezin_symbol(const SymTridiagonal& block, const CoherentState& state);

/// Sphere grid: theta_i = i pi/(n_theta - 1), i < n_theta; phi_j = 2 pi j / n_phi.
struct SphereGrid {
  int n_theta = 33;
  int n_phi = 32;
};

/// sup over the grid of |berezin_symbol(spin_block(N, J), Omega) - h0(2J/N, Omega)|.
double berezin_deviation(int n_sites, Spin j, const ModelParams& params, SphereGrid grid = {});

/// Spectral-norm distance between (2J+1)/(4pi) int Pr(J, Omega) dOmega and the
/// identity, using n_theta Gauss-Legendre nodes in cos(theta) and n_phi
/// uniform nodes in phi. Requires n_theta >= 2J+2 and n_phi >= 4J+2.
double resolution_identity_check(Spin j, int n_theta, int n_phi);

/// empirical_functional(full_cw_spectrum(N), F) for each N.
std::vector<double> zero_dist_trace_test(const std::vector<int>& sizes, const ModelParams& params,
                                         const std::function<double(double)>& F);

struct ConvergenceRow {
  int size = 0;  // matrix size N + 1
  double lambda_min = 0.0;
  double tau = 0.0;
  std::optional<double> alpha;
  double lambda_max = 0.0;
  double tau_hat = 0.0;
  std::optional<double> beta;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double m_used = 0.0;
  double M_used = 0.0;
  /// Least-squares decay exponents of tau and tau_hat against size.
  double p_min = 0.0;
  double p_max = 0.0;
};

/// Matrix sizes N_j + 1 = 40 * 2^j, j = 0..3.
std::vector<int> default_extremal_sizes();

struct ExtremalPair {
  int size = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of cw_restricted(size - 1) for each size.
std::vector<ExtremalPair> extremal_eigenvalues(const ModelParams& params,
                                               const std::vector<int>& sizes);

/// tau_j = lambda_min - m, tau_hat_j = M - lambda_max,
/// alpha_j = log10(tau_j / tau_{j+1}), beta_j likewise. Throws DomainError
/// naming the row if some tau or tau_hat is <= 0.
ConvergenceTable extremal_convergence(const ModelParams& params, const std::vector<int>& sizes,
                                      double m_used, double M_used);

}  // namespace cwglt
