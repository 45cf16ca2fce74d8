#include "cwglt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cwglt {

namespace {

constexpr double kSplitTol = 1e-15;
constexpr int kMaxQlIterations = 60;

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("eigen: tol must be > 0");
}

// Implicit QL with Wilkinson shifts, eigenvalues only. e[i] couples rows i
// and i+1; e has length n with e[n-1] = 0 as scratch.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kSplitTol * dd || std::abs(e[m]) < std::numeric_limits<double>::min())
          break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) throw DomainError("tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

std::vector<double> sqrt_descending(std::vector<double> gram_eigenvalues) {
  for (double& v : gram_eigenvalues) v = std::sqrt(std::max(0.0, v));
  std::sort(gram_eigenvalues.begin(), gram_eigenvalues.end(), std::greater<>());
  return gram_eigenvalues;
}

}  // namespace

EigenResult tridiag_eigenvalues(const SymTridiagonal& m, double tol) {
  require_tol(tol);
  std::vector<double> d(m.diag().begin(), m.diag().end());
  std::vector<double> e(m.offdiag().begin(), m.offdiag().end());
  e.push_back(0.0);
  ql_implicit(d, e);
  std::sort(d.begin(), d.end());
  return {std::move(d), tol};
}

std::size_t sturm_count(const SymTridiagonal& m, double x) {
  const auto d = m.diag();
  const auto e = m.offdiag();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, m.norm_bound());
  std::size_t count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

EigenResult bisection_eigenvalues(const SymTridiagonal& m, double tol) {
  require_tol(tol);
  const double radius = m.norm_bound();
  const std::size_t n = m.size();
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest eigenvalue: largest x with sturm_count(x) <= k.
    double lo = -radius - 1.0;
    double hi = radius + 1.0;
    if (k > 0) lo = std::max(lo, values[k - 1] - tol);
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) <= k)
        lo = mid;
      else
        hi = mid;
    }
    values[k] = 0.5 * (lo + hi);
  }
  return {std::move(values), tol};
}

SymTridiagonal householder_tridiagonalize(const DenseMatrix& input) {
  if (!input.square()) throw std::invalid_argument("householder: matrix must be square");
  const std::size_t n = input.rows();
  if (n == 0) throw std::invalid_argument("householder: empty matrix");
  if (n == 1) return SymTridiagonal({input(0, 0)}, {});

  DenseMatrix a = input;
  std::vector<double> d(n);
  std::vector<double> e(n - 1);
  std::vector<double> v(n);
  std::vector<double> p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t first = k + 1;
    double scale = 0.0;
    for (std::size_t i = first; i < n; ++i) scale = std::max(scale, std::abs(a(i, k)));
    d[k] = a(k, k);
    if (scale == 0.0) {
      e[k] = 0.0;
      continue;
    }
    double norm2 = 0.0;
    for (std::size_t i = first; i < n; ++i) {
      v[i] = a(i, k) / scale;
      norm2 += v[i] * v[i];
    }
    const double norm = std::sqrt(norm2);
    const double alpha = -std::copysign(norm, v[first]);
    e[k] = alpha * scale;
    v[first] -= alpha;
    const double vtv = norm2 - 2.0 * alpha * (v[first] + alpha) + alpha * alpha;
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;

    // p = beta A22 v ; q = p - (beta/2)(v^T p) v ; A22 -= v q^T + q v^T
    double vtp = 0.0;
    for (std::size_t i = first; i < n; ++i) {
      const double* row = &a.values()[i * n];
      double acc = 0.0;
      for (std::size_t j = first; j < n; ++j) acc += row[j] * v[j];
      p[i] = beta * acc;
      vtp += v[i] * p[i];
    }
    const double kfac = 0.5 * beta * vtp;
    for (std::size_t i = first; i < n; ++i) p[i] -= kfac * v[i];
    for (std::size_t i = first; i < n; ++i) {
      double* row = &a.values()[i * n];
      const double vi = v[i];
      const double qi = p[i];
      for (std::size_t j = first; j < n; ++j) row[j] -= vi * p[j] + qi * v[j];
    }
  }
  d[n - 2] = a(n - 2, n - 2);
  d[n - 1] = a(n - 1, n - 1);
  e[n - 2] = a(n - 1, n - 2);
  return SymTridiagonal(std::move(d), std::move(e));
}

EigenResult dense_sym_eigenvalues(const DenseMatrix& m, double tol) {
  require_tol(tol);
  if (!m.square()) throw std::invalid_argument("dense_sym_eigenvalues: matrix must be square");
  if (m.rows() == 0) throw std::invalid_argument("dense_sym_eigenvalues: empty matrix");
  if (m.rows() > kDenseEigenMaxDim)
    throw DomainError("dense_sym_eigenvalues: dimension " + std::to_string(m.rows()) +
                      " exceeds limit " + std::to_string(kDenseEigenMaxDim));

  const std::size_t n = m.rows();
  double amax = 0.0;
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j))) throw DomainError("dense_sym_eigenvalues: non-finite entry");
      amax = std::max(amax, std::abs(m(i, j)));
      if (j > i) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    }
  if (asym > 1e-12 * amax) {
    std::ostringstream msg;
    msg << "dense_sym_eigenvalues: matrix is not symmetric (max |a_ij - a_ji| = " << asym << ")";
    throw DomainError(msg.str());
  }

  DenseMatrix sym = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      sym(i, j) = avg;
      sym(j, i) = avg;
    }
  return tridiag_eigenvalues(householder_tridiagonalize(sym), tol);
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.rows() > kSingularValueMaxDim || m.cols() > kSingularValueMaxDim)
    throw DomainError("singular_values: dimension exceeds limit " + std::to_string(kSingularValueMaxDim));
  if (m.rows() == 0 || m.cols() == 0) return {};
  const DenseMatrix gram = transpose(m) * m;
  return sqrt_descending(dense_sym_eigenvalues(gram).values);
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() > kSingularValueMaxDim || m.cols() > kSingularValueMaxDim)
    throw DomainError("singular_values: dimension exceeds limit " + std::to_string(kSingularValueMaxDim));
  const bool real = std::all_of(m.values().begin(), m.values().end(),
                                [](const complex& z) { return z.imag() == 0.0; });
  if (real) return singular_values(real_part(m));

  // G = m^H m is Hermitian; [[Re G, -Im G], [Im G, Re G]] is real symmetric
  // with the spectrum of G, each eigenvalue twice.
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  ComplexMatrix adjoint(c, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) adjoint(j, i) = std::conj(m(i, j));
  const ComplexMatrix gram = adjoint * m;
  DenseMatrix embedded(2 * c, 2 * c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const complex g = gram(i, j);
      embedded(i, j) = g.real();
      embedded(i + c, j + c) = g.real();
      embedded(i, j + c) = -g.imag();
      embedded(i + c, j) = g.imag();
    }
  const auto doubled = dense_sym_eigenvalues(embedded).values;
  std::vector<double> values;
  values.reserve(c);
  for (std::size_t k = 0; k < doubled.size(); k += 2) values.push_back(doubled[k]);
  return sqrt_descending(std::move(values));
}

}  // namespace cwglt
