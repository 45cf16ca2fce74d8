#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "cwglt/eigen.hpp"
#include "cwglt/symbols.hpp"

namespace cwglt {

/// Discrete spectral measure: sorted eigenvalues with probability weights.
/// The represented matrix has dimension 2^log2_dim, which can exceed the
/// number of stored atoms when eigenvalues carry multiplicities.
class WeightedSpectrum {
 public:
  WeightedSpectrum() = default;
  /// Sorts by eigenvalue and normalizes the weights to sum to one.
  WeightedSpectrum(std::vector<double> values, std::vector<double> weights, double log2_dim);

  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  double log2_dim() const { return log2_dim_; }
  /// d_n; may be +inf for very large models.
  double total_dim() const;

  /// Mass of (-inf, x].
  double cdf(double x) const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  double log2_dim_ = 0.0;
};

WeightedSpectrum from_eigenvalues(const EigenResult& eig);
WeightedSpectrum from_eigenvalues(std::span<const double> values);

/// (1 - lambda) a + lambda b.
WeightedSpectrum mixture(const WeightedSpectrum& a, const WeightedSpectrum& b, double lambda = 0.5);

/// sum_i w_i F(lambda_i).
double empirical_functional(const WeightedSpectrum& ws, const std::function<double(double)>& F);

struct DistanceReport {
  double sup_quantile_gap = 0.0;
  double mean_abs_gap = 0.0;
  double ks_distance = 0.0;
};

/// Kolmogorov distance sup_x |F_a(x) - F_b(x)| by a merged sweep. Atoms
/// within tie_tol of the current sweep point count as coincident, so that
/// degenerate eigenvalues computed by different solvers compare equal.
double ks_distance(const WeightedSpectrum& a, const WeightedSpectrum& b, double tie_tol = 0.0);

/// Gaps |lambda_i - psi(i/(n+1))|, i = 1..n, and the Kolmogorov distance
/// between the eigenvalue and symbol-sample distributions.
DistanceReport compare_quantiles(const EigenResult& values, const MonotoneRearrangement& psi);

/// Distances between two sorted lists of equal length.
DistanceReport compare_sorted(std::span<const double> a, std::span<const double> b);

inline constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

/// (sum_i w_i |lambda_i|^p)^{1/p} = ||A||_p / d_n^{1/p}; max |lambda_i| for p = inf.
double schatten_zero_test(const WeightedSpectrum& ws, double p);

/// Reproducible uniform draws on [-1, 1): raw std::mt19937_64 output, top 53
/// bits scaled to [0, 1), mapped affinely.
class PerturbationRng {
 public:
  explicit PerturbationRng(std::uint64_t seed);
  double next_signed();

 private:
  std::mt19937_64 engine_;
};

/// Random symmetric P = sum_{i<k} s_i v_i v_i^T with orthonormal v_i and
/// s_i uniform in [-1, 1), so rank(P) <= k and ||P||_2 <= 1.
DenseMatrix random_low_rank_symmetric(std::size_t n, std::size_t rank, std::uint64_t seed);

/// Spectra of m and m + P for P = random_low_rank_symmetric(dim, rank_k, seed).
/// Requires rank_k <= dim/4.
DistanceReport perturbation_robustness(const SymTridiagonal& m, std::size_t rank_k,
                                       std::uint64_t seed);

}  // namespace cwglt
