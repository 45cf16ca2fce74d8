#pragma once

#include <cstddef>
#include <vector>

#include "cwglt/matrices.hpp"

namespace cwglt {

struct EigenResult {
  /// Ascending.
  std::vector<double> values;
  double tol_used = 0.0;

  std::size_t size() const { return values.size(); }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

inline constexpr double kDefaultEigenTol = 1e-10;

/// All eigenvalues by implicitly shifted QL (Wilkinson shift). Blocks split
/// where |e_i| < 1e-15 (|d_i| + |d_{i+1}|).
EigenResult tridiag_eigenvalues(const SymTridiagonal& m, double tol = kDefaultEigenTol);

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
std::size_t sturm_count(const SymTridiagonal& m, double x);

/// All eigenvalues by bisection on Sturm counts, each to an absolute width tol.
/// Slower than tridiag_eigenvalues; kept as an independent route.
EigenResult bisection_eigenvalues(const SymTridiagonal& m, double tol = kDefaultEigenTol);

/// Householder reduction to tridiagonal form.
SymTridiagonal householder_tridiagonalize(const DenseMatrix& m);

inline constexpr std::size_t kDenseEigenMaxDim = 4096;
inline constexpr std::size_t kSingularValueMaxDim = 2048;

/// Eigenvalues of a real symmetric matrix. Rejects matrices whose largest
/// |a_ij - a_ji| exceeds 1e-12 max|a|.
EigenResult dense_sym_eigenvalues(const DenseMatrix& m, double tol = kDefaultEigenTol);

/// Singular values, descending: square roots of the eigenvalues of m^H m.
std::vector<double> singular_values(const DenseMatrix& m);
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace cwglt
