#pragma once

// Structured matrices of the Curie-Weiss analysis: Toeplitz matrices from
// Fourier coefficients, diagonal sampling matrices, the SU(2) sector blocks,
// the restricted (J = N/2) model, its finite-difference analogue and a dense
// 2^N tensor-product oracle for small N.

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cwglt/types.hpp"

namespace cwglt {

using complex = std::complex<double>;

/// Fourier coefficients f_k, k in [-K, K]; absent offsets are zero.
struct FourierCoefficients {
  std::map<int, complex> entries;

  complex at(int k) const {
    auto it = entries.find(k);
    return it == entries.end() ? complex{} : it->second;
  }
};

/// Real symmetric tridiagonal matrix: n diagonal and n-1 off-diagonal values.
class SymTridiagonal {
 public:
  SymTridiagonal() = default;
  SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t size() const { return diag_.size(); }
  std::span<const double> diag() const { return diag_; }
  std::span<const double> offdiag() const { return offdiag_; }

  /// Gershgorin-type bound max|d| + 2 max|e| on the spectral radius.
  double norm_bound() const;

  friend bool operator==(const SymTridiagonal&, const SymTridiagonal&) = default;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/// Dense row-major matrix.
template <typename T>
class BasicDenseMatrix {
 public:
  using value_type = T;

  BasicDenseMatrix() = default;
  BasicDenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols) {}
  BasicDenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_)
      throw std::invalid_argument("dense matrix: value count does not match shape");
  }

  static BasicDenseMatrix identity(std::size_t n) {
    BasicDenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  BasicDenseMatrix& operator+=(const BasicDenseMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
  }
  BasicDenseMatrix& operator-=(const BasicDenseMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
  }
  BasicDenseMatrix& operator*=(T scale) {
    for (auto& v : values_) v *= scale;
    return *this;
  }

  friend BasicDenseMatrix operator+(BasicDenseMatrix a, const BasicDenseMatrix& b) { return a += b; }
  friend BasicDenseMatrix operator-(BasicDenseMatrix a, const BasicDenseMatrix& b) { return a -= b; }
  friend BasicDenseMatrix operator*(T s, BasicDenseMatrix a) { return a *= s; }

  /// Matrix product; zero entries of the left factor are skipped, so products
  /// with diagonal or very sparse left operands cost O(nnz * cols).
  friend BasicDenseMatrix operator*(const BasicDenseMatrix& a, const BasicDenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    BasicDenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T* crow = &c.values_[i * c.cols_];
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        const T* brow = &b.values_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  friend bool operator==(const BasicDenseMatrix&, const BasicDenseMatrix&) = default;

 private:
  void require_same_shape(const BasicDenseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("dense matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

using DenseMatrix = BasicDenseMatrix<double>;
using ComplexMatrix = BasicDenseMatrix<complex>;

/// Kronecker product a (x) b.
template <typename T>
BasicDenseMatrix<T> kron(const BasicDenseMatrix<T>& a, const BasicDenseMatrix<T>& b) {
  BasicDenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix to_complex(const DenseMatrix& m);
/// Real part; throws DomainError if some |Im| exceeds imag_tol.
DenseMatrix real_part(const ComplexMatrix& m, double imag_tol = 1e-12);
DenseMatrix to_dense(const SymTridiagonal& m);

/// Toeplitz matrix T_n(f) with entry (i, j) = f_{i-j}.
ComplexMatrix toeplitz_from_coeffs(const FourierCoefficients& coeffs, std::size_t n);

/// f_k = (1/2pi) int_{-pi}^{pi} f(theta) e^{-ik theta} d theta for |k| <= K by
/// the uniform-grid rule on the periodic interval (nodes at half-step offsets).
/// quad_points defaults to max(256, 4K+4) and must be at least 4K+4.
FourierCoefficients fourier_coeffs(const std::function<complex(double)>& f, int max_offset,
                                   std::optional<int> quad_points = std::nullopt);

/// Diagonal sampling matrix D_n(a) = diag(a(i/n)), i = 1..n.
DenseMatrix diag_sampling(const std::function<double(double)>& a, std::size_t n);
/// The diagonal of D_n(a) as a vector.
std::vector<double> diag_samples(const std::function<double(double)>& a, std::size_t n);

/// Restriction of -(gamma/2)(2J3/N)^2 - B(2J1/N) to the spin-J irreducible
/// sector, in the J3 eigenbasis ordered m = -J..J.
SymTridiagonal spin_block(int n_sites, Spin j, const ModelParams& params);

/// The J = N/2 sector as an (N+1)x(N+1) matrix indexed k = 1..N+1.
SymTridiagonal cw_restricted(int n_sites, const ModelParams& params);

/// Centered finite differences for -(1/(N+1)^2) a(x) u'' + c(x) u on
/// x_k = k/(N+1), k = 1..N+1, with a(x) = B sqrt((1-x)x) and
/// c(x) = -(gamma/2)(2x-1)^2 - 2B sqrt((1-x)x).
SymTridiagonal fd_schrodinger(int n_sites, const ModelParams& params);

/// One SU(2) irreducible component of (C^2)^{(x)N}.
struct SpinSectorSpec {
  int n_sites = 0;
  Spin spin;
  int dim = 0;
  /// Natural log of the multiplicity C(J, N).
  double log_multiplicity = 0.0;
};

/// The spins allowed for N sites, ascending.
std::vector<Spin> allowed_spins(int n_sites);

/// log C(J, N) = log((2J+1)/(N+1)) + log binom(N+1, N/2+J+1).
double log_multiplicity(int n_sites, Spin j);

/// All sectors for N sites, ascending in J.
std::vector<SpinSectorSpec> sector_list(int n_sites);

inline constexpr int kDenseOracleMaxSites = 12;

/// Dense 2^N x 2^N matrix -(gamma/2) S3^2 - B S1 with S_a = (1/N) sum_x sigma_a(x),
/// built from Kronecker products of Pauli matrices. Refuses N > 12.
DenseMatrix dense_cw_oracle(int n_sites, const ModelParams& params);

}  // namespace cwglt
