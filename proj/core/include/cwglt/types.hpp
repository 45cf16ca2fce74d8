#pragma once

#include <stdexcept>
#include <string>

namespace cwglt {

/// Raised when inputs are well-formed but outside a routine's mathematical
/// domain (J not in the sector set, size guards, tau <= 0, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coupling constants of the normalized Curie-Weiss Hamiltonian
///   H = -(gamma/2) S3^2 - bfield S1.
struct ModelParams {
  double gamma = 1.0;
  double bfield = 1.0;

  /// Throws std::invalid_argument unless gamma > 0 and both are finite.
  void validate() const;
};

/// A spin quantum number J in {0, 1/2, 1, ...}, held as the integer 2J.
class Spin {
 public:
  constexpr Spin() = default;
  constexpr explicit Spin(int twice_j) : twice_(twice_j) {
    if (twice_j < 0) throw std::invalid_argument("spin must be non-negative");
  }

  static Spin from_value(double j);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr int dim() const { return twice_ + 1; }

  friend constexpr bool operator==(Spin, Spin) = default;
  friend constexpr auto operator<=>(Spin, Spin) = default;

 private:
  int twice_ = 0;
};

std::string to_string(Spin j);

/// True when J is one of the spins occurring in the N-fold tensor power of
/// the spin-1/2 representation: 2J <= N and N - 2J even.
constexpr bool is_allowed_spin(int n_sites, Spin j) {
  return n_sites >= 1 && j.twice() <= n_sites && (n_sites - j.twice()) % 2 == 0;
}

}  // namespace cwglt
