#include "cwglt/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cwglt {

WeightedSpectrum::WeightedSpectrum(std::vector<double> values, std::vector<double> weights, double log2_dim)
    : log2_dim_(log2_dim) {
  if (values.empty()) throw std::invalid_argument("weighted spectrum: no eigenvalues");
  if (values.size() != weights.size())
    throw std::invalid_argument("weighted spectrum: values and weights differ in length");

  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("weighted spectrum: non-finite eigenvalue");
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw DomainError("weighted spectrum: weights must be finite and non-negative");
    total += weights[i];
  }
  if (!(total > 0.0)) throw DomainError("weighted spectrum: total weight is zero");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  values_.reserve(order.size());
  weights_.reserve(order.size());
  for (std::size_t idx : order) {
    values_.push_back(values[idx]);
    weights_.push_back(weights[idx] / total);
  }
}

double WeightedSpectrum::total_dim() const { return std::exp2(log2_dim_); }

double WeightedSpectrum::cdf(double x) const {
  const auto end = std::upper_bound(values_.begin(), values_.end(), x);
  const auto count = static_cast<std::size_t>(end - values_.begin());
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) acc += weights_[i];
  return std::min(acc, 1.0);
}

WeightedSpectrum from_eigenvalues(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("from_eigenvalues: no eigenvalues");
  const double n = static_cast<double>(values.size());
  return WeightedSpectrum(std::vector<double>(values.begin(), values.end()),
                          std::vector<double>(values.size(), 1.0 / n), std::log2(n));
}

WeightedSpectrum from_eigenvalues(const EigenResult& eig) { return from_eigenvalues(eig.values); }

WeightedSpectrum mixture(const WeightedSpectrum& a, const WeightedSpectrum& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("mixture: lambda must lie in [0, 1]");
  std::vector<double> values(a.values().begin(), a.values().end());
  values.insert(values.end(), b.values().begin(), b.values().end());
  std::vector<double> weights;
  weights.reserve(values.size());
  for (double w : a.weights()) weights.push_back((1.0 - lambda) * w);
  for (double w : b.weights()) weights.push_back(lambda * w);
  return WeightedSpectrum(std::move(values), std::move(weights), std::max(a.log2_dim(), b.log2_dim()));
}

double empirical_functional(const WeightedSpectrum& ws, const std::function<double(double)>& F) {
  double acc = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) acc += ws.weights()[i] * F(ws.values()[i]);
  return acc;
}

double ks_distance(const WeightedSpectrum& a, const WeightedSpectrum& b, double tie_tol) {
  if (!(tie_tol >= 0.0)) throw std::invalid_argument("ks_distance: tie_tol must be >= 0");
  const auto av = a.values();
  const auto aw = a.weights();
  const auto bv = b.values();
  const auto bw = b.weights();
  std::size_t i = 0;
  std::size_t j = 0;
  double fa = 0.0;
  double fb = 0.0;
  double best = 0.0;
  while (i < av.size() || j < bv.size()) {
    double v;
    if (i == av.size())
      v = bv[j];
    else if (j == bv.size())
      v = av[i];
    else
      v = std::min(av[i], bv[j]);
    while (i < av.size() && av[i] <= v + tie_tol) fa += aw[i++];
    while (j < bv.size() && bv[j] <= v + tie_tol) fb += bw[j++];
    best = std::max(best, std::abs(fa - fb));
  }
  return std::min(best, 1.0);
}

DistanceReport compare_quantiles(const EigenResult& values, const MonotoneRearrangement& psi) {
  if (values.values.empty()) throw std::invalid_argument("compare_quantiles: no eigenvalues");
  const std::size_t n = values.size();
  DistanceReport report;
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n + 1);
    const double gap = std::abs(values.values[i - 1] - psi.quantile(t));
    report.sup_quantile_gap = std::max(report.sup_quantile_gap, gap);
    sum += gap;
  }
  report.mean_abs_gap = sum / static_cast<double>(n);
  report.ks_distance = ks_distance(from_eigenvalues(values), from_eigenvalues(psi.sorted_values()));
  return report;
}

DistanceReport compare_sorted(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("compare_sorted: lists must be non-empty and of equal length");
  DistanceReport report;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gap = std::abs(a[i] - b[i]);
    report.sup_quantile_gap = std::max(report.sup_quantile_gap, gap);
    sum += gap;
  }
  report.mean_abs_gap = sum / static_cast<double>(a.size());
  report.ks_distance = ks_distance(from_eigenvalues(a), from_eigenvalues(b));
  return report;
}

double schatten_zero_test(const WeightedSpectrum& ws, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_zero_test: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (ws.weights()[i] > 0.0) m = std::max(m, std::abs(ws.values()[i]));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) acc += ws.weights()[i] * std::pow(std::abs(ws.values()[i]), p);
  return std::pow(acc, 1.0 / p);
}

PerturbationRng::PerturbationRng(std::uint64_t seed) : engine_(seed) {}

double PerturbationRng::next_signed() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

DenseMatrix random_low_rank_symmetric(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (rank > n) throw std::invalid_argument("random_low_rank_symmetric: rank exceeds dimension");
  PerturbationRng rng(seed);
  std::vector<std::vector<double>> basis;
  basis.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_signed();
    // Modified Gram-Schmidt, applied twice for orthogonality to rounding level.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw DomainError("random_low_rank_symmetric: degenerate direction");
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }

  DenseMatrix p(n, n);
  for (const auto& v : basis) {
    const double s = rng.next_signed();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += s * v[i] * v[j];
  }
  // Exact symmetry for the dense solver.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) p(j, i) = p(i, j);
  return p;
}

DistanceReport perturbation_robustness(const SymTridiagonal& m, std::size_t rank_k, std::uint64_t seed) {
  const std::size_t n = m.size();
  if (rank_k > n / 4) throw std::invalid_argument("perturbation_robustness: rank must be <= dim/4");
  const auto original = tridiag_eigenvalues(m);
  if (rank_k == 0) return compare_sorted(original.values, original.values);
  DenseMatrix perturbed = to_dense(m);
  perturbed += random_low_rank_symmetric(n, rank_k, seed);
  const auto moved = dense_sym_eigenvalues(perturbed);
  return compare_sorted(original.values, moved.values);
}

}  // namespace cwglt
