#include "cwglt/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cwglt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kImagTol = 1e-12;

double sqrt_x_one_minus_x(double x) { return std::sqrt(std::max(0.0, (1.0 - x) * x)); }

}  // namespace

complex SeparableSymbol::operator()(double x, double theta) const {
  complex acc{};
  for (const auto& term : terms) acc += term.a(x) * term.f(theta);
  return acc;
}

SeparableSymbol cw_symbol(const ModelParams& params) {
  params.validate();
  const double gamma = params.gamma;
  const double b = params.bfield;
  SeparableSymbol sym;
  sym.terms.push_back({[gamma](double x) { return -(gamma / 2.0) * (2.0 * x - 1.0) * (2.0 * x - 1.0); },
                       [](double) { return complex{1.0, 0.0}; }});
  sym.terms.push_back({sqrt_x_one_minus_x,
                       [b](double theta) { return complex{-2.0 * b * std::cos(theta), 0.0}; }});
  std::ostringstream label;
  label << "curie-weiss(gamma=" << gamma << ", B=" << b << ")";
  sym.description = label.str();
  return sym;
}

SeparableSymbol constant_symbol(double c) {
  SeparableSymbol sym;
  sym.terms.push_back({[c](double) { return c; }, [](double) { return complex{1.0, 0.0}; }});
  sym.description = "constant(" + std::to_string(c) + ")";
  return sym;
}

double classical_h0(double u, double theta_sph, double phi_sph, const ModelParams& params) {
  params.validate();
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("classical_h0: u must lie in [0, 1]");
  if (!(theta_sph >= 0.0 && theta_sph <= kPi)) throw DomainError("classical_h0: theta must lie in [0, pi]");
  if (!(phi_sph >= 0.0 && phi_sph < 2.0 * kPi)) throw DomainError("classical_h0: phi must lie in [0, 2pi)");
  const double z = u * std::cos(theta_sph);
  return -(params.gamma / 2.0) * z * z - params.bfield * u * std::sin(theta_sph) * std::cos(phi_sph);
}

std::vector<double> sample_grid(const SeparableSymbol& sym, int n_x, int n_theta) {
  if (n_x < 2 || n_theta < 2) throw std::invalid_argument("sample_grid: grid must be at least 2x2");
  const auto nx = static_cast<std::size_t>(n_x);
  const auto nt = static_cast<std::size_t>(n_theta);

  // Separable: evaluate each factor once per row / column.
  std::vector<double> xs(nx);
  std::vector<double> thetas(nt);
  for (std::size_t i = 0; i < nx; ++i) xs[i] = (static_cast<double>(i) + 0.5) / n_x;
  for (std::size_t j = 0; j < nt; ++j) thetas[j] = -kPi + (static_cast<double>(j) + 0.5) * 2.0 * kPi / n_theta;

  std::vector<std::vector<double>> a_vals(sym.terms.size(), std::vector<double>(nx));
  std::vector<std::vector<complex>> f_vals(sym.terms.size(), std::vector<complex>(nt));
  for (std::size_t t = 0; t < sym.terms.size(); ++t) {
    for (std::size_t i = 0; i < nx; ++i) a_vals[t][i] = sym.terms[t].a(xs[i]);
    for (std::size_t j = 0; j < nt; ++j) f_vals[t][j] = sym.terms[t].f(thetas[j]);
  }

  std::vector<double> out(nx * nt);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      complex v{};
      for (std::size_t t = 0; t < sym.terms.size(); ++t) v += a_vals[t][i] * f_vals[t][j];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v.imag()) > kImagTol) {
        std::ostringstream msg;
        msg << "sample_grid: symbol value " << v << " at (x=" << xs[i] << ", theta=" << thetas[j]
            << ") is not a finite real number";
        throw DomainError(msg.str());
      }
      out[i * nt + j] = v.real();
    }
  return out;
}

MonotoneRearrangement::MonotoneRearrangement(std::vector<double> sorted_values, int n_x, int n_theta)
    : sorted_(std::move(sorted_values)), n_x_(n_x), n_theta_(n_theta) {
  if (sorted_.empty()) throw std::invalid_argument("rearrangement: no samples");
  if (!std::is_sorted(sorted_.begin(), sorted_.end()))
    throw std::invalid_argument("rearrangement: values must be non-decreasing");
}

double MonotoneRearrangement::quantile(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("quantile: t must lie in [0, 1]");
  const double rank = t * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  if (lo + 1 >= sorted_.size()) return sorted_.back();
  const double frac = rank - static_cast<double>(lo);
  return sorted_[lo] + frac * (sorted_[lo + 1] - sorted_[lo]);
}

MonotoneRearrangement rearrangement(std::vector<double> samples, int n_x, int n_theta) {
  if (samples.empty()) throw std::invalid_argument("rearrangement: no samples");
  if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("rearrangement: samples must be finite");
  std::sort(samples.begin(), samples.end());
  return MonotoneRearrangement(std::move(samples), n_x, n_theta);
}

MonotoneRearrangement rearrangement(std::vector<double> samples) {
  const int n = static_cast<int>(samples.size());
  return rearrangement(std::move(samples), n, 1);
}

namespace {

struct Candidate {
  SymbolPoint at;
  double value;
};

// Pattern search on the box [0,1] x [-pi,pi]: move to the best of the eight
// neighbours at the current step until none improves, then halve the step.
Candidate refine(const SeparableSymbol& sym, Candidate best, double hx, double ht, int rounds, double sign) {
  auto eval = [&](double x, double t) { return sign * sym.real(x, t); };
  constexpr int kMaxMovesPerRound = 64;
  for (int r = 0; r < rounds; ++r) {
    for (int move = 0; move < kMaxMovesPerRound; ++move) {
      Candidate next = best;
      for (int dx = -1; dx <= 1; ++dx)
        for (int dt = -1; dt <= 1; ++dt) {
          if (dx == 0 && dt == 0) continue;
          const double x = std::clamp(best.at.x + dx * hx, 0.0, 1.0);
          const double t = std::clamp(best.at.theta + dt * ht, -kPi, kPi);
          const double v = eval(x, t);
          if (v < next.value) next = {{x, t}, v};
        }
      if (next.value >= best.value) break;
      best = next;
    }
    hx *= 0.5;
    ht *= 0.5;
  }
  return best;
}

}  // namespace

SymbolExtrema symbol_extrema(const SeparableSymbol& sym, int n_x, int n_theta, int refine_iters) {
  if (n_x < 64 || n_theta < 64) throw std::invalid_argument("symbol_extrema: grid must be at least 64x64");
  if (refine_iters < 0) throw std::invalid_argument("symbol_extrema: refine_iters must be >= 0");

  const double hx = 1.0 / (n_x - 1);
  const double ht = 2.0 * kPi / (n_theta - 1);
  Candidate lo{{0.0, -kPi}, sym.real(0.0, -kPi)};
  Candidate hi = lo;
  for (int i = 0; i < n_x; ++i)
    for (int j = 0; j < n_theta; ++j) {
      const double x = i * hx;
      const double t = -kPi + j * ht;
      const double v = sym.real(x, t);
      if (v < lo.value) lo = {{x, t}, v};
      if (v > hi.value) hi = {{x, t}, v};
    }

  Candidate lo_ref = refine(sym, lo, hx, ht, refine_iters, 1.0);
  Candidate hi_ref = refine(sym, {hi.at, -hi.value}, hx, ht, refine_iters, -1.0);
  return {lo_ref.value, -hi_ref.value, lo_ref.at, hi_ref.at};
}

double weak_star_functional(const SeparableSymbol& sym, const std::function<double(double)>& F,
                            int n_x, int n_theta) {
  if (n_x < 128 || n_theta < 128)
    throw std::invalid_argument("weak_star_functional: quadrature grid must be at least 128x128");
  const auto samples = sample_grid(sym, n_x, n_theta);
  // Compensated summation; grids can hold 10^6+ terms.
  double sum = 0.0;
  double carry = 0.0;
  for (double v : samples) {
    const double y = F(v) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(samples.size());
}

}  // namespace cwglt
