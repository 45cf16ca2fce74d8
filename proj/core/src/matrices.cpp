#include "cwglt/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace cwglt {

void ModelParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(bfield))
    throw std::invalid_argument("model parameters must be finite");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
}

Spin Spin::from_value(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!(j >= 0.0) || std::abs(twice - rounded) > 1e-9)
    throw std::invalid_argument("spin must be a non-negative half-integer, got " + std::to_string(j));
  return Spin(static_cast<int>(rounded));
}

std::string to_string(Spin j) {
  if (j.twice() % 2 == 0) return std::to_string(j.twice() / 2);
  return std::to_string(j.twice()) + "/2";
}

SymTridiagonal::SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw std::invalid_argument("tridiagonal matrix must have size >= 1");
  if (offdiag_.size() + 1 != diag_.size())
    throw std::invalid_argument("tridiagonal matrix: off-diagonal length must be n-1");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diag_.begin(), diag_.end(), finite) ||
      !std::all_of(offdiag_.begin(), offdiag_.end(), finite))
    throw DomainError("tridiagonal matrix has non-finite entries");
}

double SymTridiagonal::norm_bound() const {
  double dmax = 0.0;
  for (double d : diag_) dmax = std::max(dmax, std::abs(d));
  double emax = 0.0;
  for (double e : offdiag_) emax = std::max(emax, std::abs(e));
  return dmax + 2.0 * emax;
}

ComplexMatrix to_complex(const DenseMatrix& m) {
  std::vector<complex> values(m.values().begin(), m.values().end());
  return ComplexMatrix(m.rows(), m.cols(), std::move(values));
}

DenseMatrix real_part(const ComplexMatrix& m, double imag_tol) {
  std::vector<double> values;
  values.reserve(m.values().size());
  for (const complex& z : m.values()) {
    if (std::abs(z.imag()) > imag_tol)
      throw DomainError("matrix has a non-negligible imaginary part");
    values.push_back(z.real());
  }
  return DenseMatrix(m.rows(), m.cols(), std::move(values));
}

DenseMatrix to_dense(const SymTridiagonal& m) {
  const std::size_t n = m.size();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = m.diag()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out(i, i + 1) = m.offdiag()[i];
    out(i + 1, i) = m.offdiag()[i];
  }
  return out;
}

ComplexMatrix toeplitz_from_coeffs(const FourierCoefficients& coeffs, std::size_t n) {
  if (n == 0) throw std::invalid_argument("toeplitz: n must be >= 1");
  ComplexMatrix t(n, n);
  const auto size = static_cast<long long>(n);
  for (const auto& [k, value] : coeffs.entries) {
    if (k >= size || -k >= size) continue;
    for (long long i = std::max(0LL, static_cast<long long>(k)); i < size && i - k < size; ++i)
      t(static_cast<std::size_t>(i), static_cast<std::size_t>(i - k)) = value;
  }
  return t;
}

FourierCoefficients fourier_coeffs(const std::function<complex(double)>& f, int max_offset,
                                   std::optional<int> quad_points) {
  if (max_offset < 0) throw std::invalid_argument("fourier_coeffs: max_offset must be >= 0");
  const int minimum = 4 * max_offset + 4;
  const int points = quad_points.value_or(std::max(256, minimum));
  if (points < minimum)
    throw std::invalid_argument("fourier_coeffs: need at least 4K+4 quadrature points");

  constexpr double pi = std::numbers::pi;
  const double step = 2.0 * pi / points;
  std::vector<complex> samples(static_cast<std::size_t>(points));
  std::vector<double> nodes(samples.size());
  for (int j = 0; j < points; ++j) {
    const double theta = -pi + (j + 0.5) * step;
    const complex v = f(theta);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "fourier_coeffs: non-finite sample at theta=" << theta;
      throw DomainError(msg.str());
    }
    nodes[static_cast<std::size_t>(j)] = theta;
    samples[static_cast<std::size_t>(j)] = v;
  }

  FourierCoefficients out;
  for (int k = -max_offset; k <= max_offset; ++k) {
    complex acc{};
    for (std::size_t j = 0; j < samples.size(); ++j)
      acc += samples[j] * std::polar(1.0, -k * nodes[j]);
    out.entries[k] = acc / static_cast<double>(points);
  }
  return out;
}

std::vector<double> diag_samples(const std::function<double(double)>& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("diag_sampling: n must be >= 1");
  std::vector<double> d(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double v = a(static_cast<double>(i) / static_cast<double>(n));
    if (!std::isfinite(v))
      throw DomainError("diag_sampling: non-finite sample at index " + std::to_string(i));
    d[i - 1] = v;
  }
  return d;
}

DenseMatrix diag_sampling(const std::function<double(double)>& a, std::size_t n) {
  const auto d = diag_samples(a, n);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

namespace {

void require_sites(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("number of sites N must be >= 1");
}

}  // namespace

// Sector entries are evaluated from integer expressions so that spin_block at
// J = N/2 and cw_restricted agree bit for bit:
//   2m/N        = (2i - 2J)/N
//   sqrt(J(J+1) - m(m+1)) / N = sqrt((2J - i)(i + 1)) / N,   i = J + m.
SymTridiagonal spin_block(int n_sites, Spin j, const ModelParams& params) {
  require_sites(n_sites);
  params.validate();
  if (!is_allowed_spin(n_sites, j))
    throw DomainError("spin J=" + to_string(j) + " does not occur for N=" + std::to_string(n_sites));

  const int twice = j.twice();
  const double n = n_sites;
  std::vector<double> diag(static_cast<std::size_t>(twice) + 1);
  std::vector<double> off(static_cast<std::size_t>(twice));
  for (int i = 0; i <= twice; ++i) {
    const double s3 = static_cast<double>(2 * i - twice) / n;
    diag[static_cast<std::size_t>(i)] = -(params.gamma / 2.0) * s3 * s3;
  }
  for (int i = 0; i < twice; ++i) {
    const double ladder = std::sqrt(static_cast<double>(twice - i) * static_cast<double>(i + 1));
    off[static_cast<std::size_t>(i)] = -params.bfield * (ladder / n);
  }
  return SymTridiagonal(std::move(diag), std::move(off));
}

SymTridiagonal cw_restricted(int n_sites, const ModelParams& params) {
  require_sites(n_sites);
  params.validate();
  const int n = n_sites;
  const double nd = n;
  std::vector<double> diag(static_cast<std::size_t>(n) + 1);
  std::vector<double> off(static_cast<std::size_t>(n));
  // diag_k = -(gamma/2)(2(k-1)/N - 1)^2, k = 1..N+1
  for (int k = 1; k <= n + 1; ++k) {
    const double s3 = static_cast<double>(2 * (k - 1) - n) / nd;
    diag[static_cast<std::size_t>(k - 1)] = -(params.gamma / 2.0) * s3 * s3;
  }
  // offdiag_k = -B sqrt(1 - (k-1)/N) sqrt(k/N), k = 1..N
  for (int k = 1; k <= n; ++k) {
    const double ladder = std::sqrt(static_cast<double>(n - (k - 1)) * static_cast<double>(k));
    off[static_cast<std::size_t>(k - 1)] = -params.bfield * (ladder / nd);
  }
  return SymTridiagonal(std::move(diag), std::move(off));
}

SymTridiagonal fd_schrodinger(int n_sites, const ModelParams& params) {
  require_sites(n_sites);
  params.validate();
  const std::size_t size = static_cast<std::size_t>(n_sites) + 1;
  const double h = 1.0 / static_cast<double>(n_sites + 1);
  auto a = [&](double x) { return params.bfield * std::sqrt(std::max(0.0, (1.0 - x) * x)); };
  auto c = [&](double x) {
    const double u = 2.0 * x - 1.0;
    return -(params.gamma / 2.0) * u * u - 2.0 * params.bfield * std::sqrt(std::max(0.0, (1.0 - x) * x));
  };
  std::vector<double> diag(size);
  std::vector<double> off(size - 1);
  for (std::size_t k = 1; k <= size; ++k) {
    const double x = static_cast<double>(k) * h;
    diag[k - 1] = 2.0 * a(x) + c(x);
    if (k < size) off[k - 1] = -a(x);
  }
  return SymTridiagonal(std::move(diag), std::move(off));
}

std::vector<Spin> allowed_spins(int n_sites) {
  require_sites(n_sites);
  std::vector<Spin> spins;
  for (int twice = n_sites % 2; twice <= n_sites; twice += 2) spins.emplace_back(twice);
  return spins;
}

double log_multiplicity(int n_sites, Spin j) {
  if (!is_allowed_spin(n_sites, j))
    throw DomainError("spin J=" + to_string(j) + " does not occur for N=" + std::to_string(n_sites));
  // binom(N+1, N/2+J+1) with N/2+J+1 = (N+2J)/2 + 1 and N+1 - that = (N-2J)/2.
  const int top = n_sites + 1;
  const int upper = (n_sites + j.twice()) / 2 + 1;
  const int lower = top - upper;
  const double log_binom = std::lgamma(top + 1.0) - std::lgamma(upper + 1.0) - std::lgamma(lower + 1.0);
  return std::log(static_cast<double>(j.dim())) - std::log(static_cast<double>(top)) + log_binom;
}

std::vector<SpinSectorSpec> sector_list(int n_sites) {
  std::vector<SpinSectorSpec> out;
  for (Spin j : allowed_spins(n_sites))
    out.push_back({n_sites, j, j.dim(), log_multiplicity(n_sites, j)});
  return out;
}

DenseMatrix dense_cw_oracle(int n_sites, const ModelParams& params) {
  require_sites(n_sites);
  params.validate();
  if (n_sites > kDenseOracleMaxSites)
    throw DomainError("dense oracle refuses N=" + std::to_string(n_sites) + " (limit " +
                      std::to_string(kDenseOracleMaxSites) + ", dimension 2^N)");

  const DenseMatrix sigma1(2, 2, {0.0, 1.0, 1.0, 0.0});
  const DenseMatrix sigma3(2, 2, {1.0, 0.0, 0.0, -1.0});
  const std::size_t dim = std::size_t{1} << n_sites;

  // sigma(x) = 1_{2^x} (x) sigma (x) 1_{2^(N-x-1)}
  auto site_operator = [&](const DenseMatrix& sigma, int x) {
    const DenseMatrix left = DenseMatrix::identity(std::size_t{1} << x);
    const DenseMatrix right = DenseMatrix::identity(std::size_t{1} << (n_sites - x - 1));
    return kron(kron(left, sigma), right);
  };

  DenseMatrix s1(dim, dim);
  DenseMatrix s3(dim, dim);
  for (int x = 0; x < n_sites; ++x) {
    s1 += site_operator(sigma1, x);
    s3 += site_operator(sigma3, x);
  }
  const double inv_n = 1.0 / n_sites;
  s1 *= inv_n;
  s3 *= inv_n;

  DenseMatrix h = s3 * s3;
  h *= -(params.gamma / 2.0);
  s1 *= -params.bfield;
  h += s1;
  return h;
}

}  // namespace cwglt
