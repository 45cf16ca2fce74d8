#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cwglt/matrices.hpp"

namespace cwglt {

/// kappa(x, theta) = sum_i a_i(x) f_i(theta) on [0,1] x [-pi,pi].
struct SeparableSymbol {
  struct Term {
    std::function<double(double)> a;
    std::function<complex(double)> f;
  };

  std::vector<Term> terms;
  std::string description;

  complex operator()(double x, double theta) const;
  /// Real part of kappa(x, theta).
  double real(double x, double theta) const { return (*this)(x, theta).real(); }
};

/// -(gamma/2)(2x-1)^2 - 2B cos(theta) sqrt((1-x)x).
SeparableSymbol cw_symbol(const ModelParams& params);
SeparableSymbol constant_symbol(double c);

/// Classical energy h0 at u e(Omega), Omega = (theta_sph, phi_sph):
/// -(gamma/2)(u cos theta)^2 - B u sin theta cos phi.
double classical_h0(double u, double theta_sph, double phi_sph, const ModelParams& params);

/// kappa on the open grid x_i = (i - 1/2)/n_x, theta_j = -pi + (j - 1/2) 2pi/n_theta,
/// x-major. Throws DomainError on a non-real or non-finite sample.
std::vector<double> sample_grid(const SeparableSymbol& sym, int n_x, int n_theta);

/// Sorted samples of a symbol; the quantile function psi on [0,1].
class MonotoneRearrangement {
 public:
  MonotoneRearrangement() = default;
  MonotoneRearrangement(std::vector<double> sorted_values, int n_x, int n_theta);

  const std::vector<double>& sorted_values() const { return sorted_; }
  int n_x() const { return n_x_; }
  int n_theta() const { return n_theta_; }
  std::size_t size() const { return sorted_.size(); }

  /// Linear interpolation at fractional rank t (len - 1).
  double quantile(double t) const;

 private:
  std::vector<double> sorted_;
  int n_x_ = 0;
  int n_theta_ = 0;
};

MonotoneRearrangement rearrangement(std::vector<double> samples, int n_x, int n_theta);
MonotoneRearrangement rearrangement(std::vector<double> samples);

struct SymbolPoint {
  double x = 0.0;
  double theta = 0.0;
};

struct SymbolExtrema {
  double min = 0.0;
  double max = 0.0;
  SymbolPoint argmin;
  SymbolPoint argmax;
};

/// Global min/max: scan of a closed n_x x n_theta grid, then pattern search
/// around the best node with the step halved refine_iters times.
SymbolExtrema symbol_extrema(const SeparableSymbol& sym, int n_x = 256, int n_theta = 256,
                             int refine_iters = 60);

/// (1/2pi) int_0^1 int_{-pi}^{pi} F(kappa(x, theta)) dtheta dx, midpoint rule.
double weak_star_functional(const SeparableSymbol& sym, const std::function<double(double)>& F,
                            int n_x = 256, int n_theta = 256);

}  // namespace cwglt
