#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cwglt/eigen.hpp"
#include "cwglt/matrices.hpp"
#include "cwglt/symbols.hpp"
#include "oracles.hpp"

namespace cwglt {
namespace {

constexpr double kPi = std::numbers::pi;
const ModelParams kUnit{1.0, 1.0};

TEST(Toeplitz, SubdiagonalShift) {
  FourierCoefficients c;
  c.entries[1] = 1.0;
  const auto t = toeplitz_from_coeffs(c, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t(i, j), complex(i == j + 1 ? 1.0 : 0.0)) << i << "," << j;
}

TEST(Toeplitz, TwoCosineIsTridiagonal) {
  FourierCoefficients c;
  c.entries[-1] = 1.0;
  c.entries[1] = 1.0;
  const auto t = toeplitz_from_coeffs(c, 3);
  const ComplexMatrix expected(3, 3, {0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0});
  EXPECT_EQ(t, expected);
}

TEST(Toeplitz, ConstantSymbolIsScaledIdentity) {
  FourierCoefficients c;
  c.entries[0] = complex(2.5, -1.0);
  for (std::size_t n : {1u, 2u, 7u}) {
    auto expected = ComplexMatrix::identity(n);
    expected *= complex(2.5, -1.0);
    EXPECT_EQ(toeplitz_from_coeffs(c, n), expected);
  }
}

TEST(Toeplitz, ConstantAlongDiagonalsAndIgnoresFarOffsets) {
  oracle::Uniform rng(7);
  FourierCoefficients c;
  for (int k = -6; k <= 6; ++k) c.entries[k] = complex(rng(-1, 1), rng(-1, 1));
  const auto t = toeplitz_from_coeffs(c, 5);  // offsets +-5, +-6 fall outside
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const int k = static_cast<int>(i) - static_cast<int>(j);
      EXPECT_EQ(t(i, j), c.at(k));
      if (i + 1 < 5 && j + 1 < 5) EXPECT_EQ(t(i, j), t(i + 1, j + 1));
    }
  EXPECT_THROW(toeplitz_from_coeffs(c, 0), std::invalid_argument);
}

TEST(Fourier, TwoCosine) {
  const auto c = fourier_coeffs([](double t) { return complex(2.0 * std::cos(t), 0.0); }, 2);
  EXPECT_NEAR(std::abs(c.at(1) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.at(-1) - 1.0), 0.0, 1e-12);
  EXPECT_LE(std::abs(c.at(0)), 1e-12);
  EXPECT_LE(std::abs(c.at(2)), 1e-12);
  EXPECT_LE(std::abs(c.at(-2)), 1e-12);
  EXPECT_EQ(c.entries.size(), 5u);
}

TEST(Fourier, NegativeExponential) {
  const auto c = fourier_coeffs([](double t) { return std::polar(1.0, -t); }, 1);
  EXPECT_NEAR(std::abs(c.at(-1) - 1.0), 0.0, 1e-12);
  EXPECT_LE(std::abs(c.at(0)), 1e-12);
  EXPECT_LE(std::abs(c.at(1)), 1e-12);
}

TEST(Fourier, SawtoothAgreesAcrossResolutions) {
  auto saw = [](double t) { return complex(t, 0.0); };
  const complex lo = fourier_coeffs(saw, 1, 1 << 16).at(1);
  const complex hi = fourier_coeffs(saw, 1, 1 << 17).at(1);
  EXPECT_LE(std::abs(hi - lo), 1e-8);
  // (1/2pi) int theta e^{-i theta} = -i
  EXPECT_LE(std::abs(hi - complex(0.0, -1.0)), 1e-8);
}

TEST(Fourier, RealFunctionsGiveConjugateSymmetry) {
  auto f = [](double t) { return complex(std::exp(std::sin(t)) + 0.3 * std::cos(3 * t), 0.0); };
  const auto c = fourier_coeffs(f, 4);
  for (int k = 1; k <= 4; ++k) EXPECT_LE(std::abs(c.at(-k) - std::conj(c.at(k))), 1e-13);
}

TEST(Fourier, Preconditions) {
  auto f = [](double) { return complex(1.0, 0.0); };
  EXPECT_THROW(fourier_coeffs(f, 3, 15), std::invalid_argument);
  EXPECT_NO_THROW(fourier_coeffs(f, 3, 16));
  EXPECT_THROW(fourier_coeffs(f, -1), std::invalid_argument);
  EXPECT_THROW(fourier_coeffs([](double t) { return complex(1.0 / (t - t), 0.0); }, 1), DomainError);
}

TEST(DiagSampling, Examples) {
  EXPECT_EQ(diag_sampling([](double) { return 1.0; }, 3), DenseMatrix::identity(3));
  const auto d = diag_samples([](double x) { return x; }, 4);
  EXPECT_EQ(d, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
  const auto s = diag_samples([](double x) { return std::sqrt((1 - x) * x); }, 2);
  EXPECT_DOUBLE_EQ(s[0], 0.5);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
}

TEST(DiagSampling, NonFiniteSampleNamesIndex) {
  try {
    diag_sampling([](double x) { return 1.0 / (x - 0.5); }, 4);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(diag_sampling([](double x) { return x; }, 0), std::invalid_argument);
}

TEST(SpinBlock, SpinOneTwoSites) {
  const auto b = spin_block(2, Spin(2), kUnit);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_DOUBLE_EQ(b.diag()[0], -0.5);
  EXPECT_DOUBLE_EQ(b.diag()[1], 0.0);
  EXPECT_DOUBLE_EQ(b.diag()[2], -0.5);
  EXPECT_NEAR(b.offdiag()[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.offdiag()[1], -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(SpinBlock, SingletIsZero) {
  const auto b = spin_block(2, Spin(0), ModelParams{3.0, -2.0});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.diag()[0], 0.0);
}

TEST(SpinBlock, TopSectorEqualsRestrictedExactly) {
  oracle::Uniform rng(11);
  for (int n = 1; n <= 80; ++n) {
    const ModelParams p{rng(0.1, 3.0), rng(-2.0, 2.0)};
    EXPECT_EQ(spin_block(n, Spin(n), p), cw_restricted(n, p)) << "N=" << n;
  }
}

TEST(SpinBlock, RejectsForbiddenSpins) {
  EXPECT_THROW(spin_block(3, Spin(2), kUnit), DomainError);  // parity
  EXPECT_THROW(spin_block(2, Spin(4), kUnit), DomainError);  // 2J > N
  EXPECT_THROW(spin_block(0, Spin(0), kUnit), std::invalid_argument);
  EXPECT_THROW(spin_block(2, Spin(2), ModelParams{0.0, 1.0}), std::invalid_argument);
}

TEST(SpinBlock, MatchesLadderFormula) {
  // 2J1 = J+ + J-, so the coupling of m and m+1 is -(B/N) sqrt(J(J+1) - m(m+1)).
  const int n = 9;
  const ModelParams p{1.7, 0.6};
  for (Spin j : allowed_spins(n)) {
    const auto b = spin_block(n, j, p);
    const double jj = j.value();
    for (int i = 0; i < j.dim(); ++i) {
      const double m = -jj + i;
      EXPECT_NEAR(b.diag()[static_cast<std::size_t>(i)], -(p.gamma / 2) * std::pow(2 * m / n, 2), 1e-15);
      if (i + 1 < j.dim())
        EXPECT_NEAR(b.offdiag()[static_cast<std::size_t>(i)],
                    -(p.bfield / n) * std::sqrt(jj * (jj + 1) - m * (m + 1)), 1e-15);
    }
  }
}

TEST(SpinBlock, UniformNormBound) {
  oracle::Uniform rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p{rng(0.1, 3.0), rng(-3.0, 3.0)};
    const int n = rng.integer(1, 60);
    for (Spin j : allowed_spins(n))
      EXPECT_LE(spin_block(n, j, p).norm_bound(), p.gamma / 2 + 2 * std::abs(p.bfield) + 1e-12);
  }
}

TEST(Restricted, TwoSites) {
  const auto m = cw_restricted(2, kUnit);
  EXPECT_EQ(std::vector<double>(m.diag().begin(), m.diag().end()), (std::vector<double>{-0.5, 0.0, -0.5}));
  EXPECT_NEAR(m.offdiag()[0], -0.70711, 5e-6);
  EXPECT_NEAR(m.offdiag()[1], -0.70711, 5e-6);
  const auto eig = tridiag_eigenvalues(m);
  EXPECT_NEAR(eig.values[0], (-1 - std::sqrt(17.0)) / 4, 1e-12);
  EXPECT_NEAR(eig.values[1], -0.5, 1e-12);
  EXPECT_NEAR(eig.values[2], (-1 + std::sqrt(17.0)) / 4, 1e-12);
}

TEST(Restricted, ZeroFieldIsDiagonal) {
  const int n = 17;
  const ModelParams p{2.0, 0.0};
  const auto m = cw_restricted(n, p);
  for (double e : m.offdiag()) EXPECT_EQ(std::abs(e), 0.0);
  for (int k = 1; k <= n + 1; ++k)
    EXPECT_NEAR(m.diag()[static_cast<std::size_t>(k - 1)], -(p.gamma / 2) * std::pow(2.0 * (k - 1) / n - 1, 2), 1e-15);
}

TEST(Restricted, ThirtyNineSitesMinimum) {
  // Independent dense oracle value; lies below the symbol minimum -1 because
  // the coherent state at theta = pi/2 already has energy -1 - 1/(2N).
  const auto eig = tridiag_eigenvalues(cw_restricted(39, kUnit));
  EXPECT_NEAR(eig.min(), -1.0202202742462962, 1e-12);
  EXPECT_LT(eig.min(), -1.0 - 1.0 / (2 * 39) + 1e-12);
  EXPECT_THROW(cw_restricted(0, kUnit), std::invalid_argument);
}

TEST(Sectors, TwoAndFourSites) {
  const auto s2 = sector_list(2);
  ASSERT_EQ(s2.size(), 2u);
  EXPECT_EQ(s2[0].spin, Spin(0));
  EXPECT_EQ(s2[1].spin, Spin(2));
  EXPECT_NEAR(std::exp(s2[0].log_multiplicity), 1.0, 1e-12);
  EXPECT_NEAR(std::exp(s2[1].log_multiplicity), 1.0, 1e-12);

  const auto s4 = sector_list(4);
  ASSERT_EQ(s4.size(), 3u);
  const double expected[] = {2, 3, 1};
  double dim = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(std::exp(s4[i].log_multiplicity), expected[i], 1e-12);
    EXPECT_EQ(s4[i].dim, s4[i].spin.dim());
    dim += std::exp(s4[i].log_multiplicity) * s4[i].dim;
  }
  EXPECT_NEAR(dim, 16.0, 1e-10);
}

TEST(Sectors, AllowedSpinsFollowParity) {
  EXPECT_EQ(allowed_spins(5), (std::vector<Spin>{Spin(1), Spin(3), Spin(5)}));
  EXPECT_EQ(allowed_spins(4), (std::vector<Spin>{Spin(0), Spin(2), Spin(4)}));
  EXPECT_THROW(allowed_spins(0), std::invalid_argument);
}

TEST(Sectors, MatchExactIntegerCounts) {
  for (int n = 1; n <= 100; ++n)
    for (const auto& s : sector_list(n)) {
      const double exact = oracle::exact_multiplicity(n, s.spin.twice());
      EXPECT_NEAR(s.log_multiplicity, std::log(exact), 1e-11 * std::max(1.0, std::log(exact)))
          << "N=" << n << " 2J=" << s.spin.twice();
    }
}

TEST(Sectors, TopSectorHasMultiplicityOne) {
  for (int n : {1, 2, 7, 100, 1999, 2000}) EXPECT_NEAR(log_multiplicity(n, Spin(n)), 0.0, 1e-9) << n;
}

TEST(Sectors, DimensionSumRuleInLogSpace) {
  for (int n : {1, 2, 3, 10, 61, 500, 1001, 2000}) {
    double acc = 0.0;
    for (const auto& s : sector_list(n))
      acc += std::exp(s.log_multiplicity + std::log(static_cast<double>(s.dim)) - n * std::log(2.0));
    EXPECT_NEAR(acc, 1.0, 1e-10) << "N=" << n;
  }
}

TEST(FiniteDifference, SymbolIdentity) {
  oracle::Uniform rng(3);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p{rng(0.1, 3), rng(-2, 2)};
    const double x = rng(0, 1);
    const double t = rng(-kPi, kPi);
    const double a = p.bfield * std::sqrt((1 - x) * x);
    const double c = -(p.gamma / 2) * std::pow(2 * x - 1, 2) - 2 * p.bfield * std::sqrt((1 - x) * x);
    EXPECT_NEAR(2 * a * (1 - std::cos(t)) + c, cw_symbol(p).real(x, t), 1e-13);
  }
}

TEST(FiniteDifference, ZeroFieldIsDiagonal) {
  const int n = 12;
  const ModelParams p{1.5, 0.0};
  const auto m = fd_schrodinger(n, p);
  ASSERT_EQ(m.size(), 13u);
  for (double e : m.offdiag()) EXPECT_EQ(std::abs(e), 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    const double x = static_cast<double>(k) / (n + 1);
    EXPECT_NEAR(m.diag()[static_cast<std::size_t>(k - 1)], -(p.gamma / 2) * std::pow(2 * x - 1, 2), 1e-15);
  }
}

TEST(DenseOracle, OneSite) {
  const auto h = dense_cw_oracle(1, kUnit);
  EXPECT_EQ(h, DenseMatrix(2, 2, {-0.5, -1.0, -1.0, -0.5}));
  const auto ev = oracle::jacobi_eigenvalues(h);
  EXPECT_NEAR(ev[0], -1.5, 1e-14);
  EXPECT_NEAR(ev[1], 0.5, 1e-14);
}

TEST(DenseOracle, TwoSites) {
  const auto ev = oracle::jacobi_eigenvalues(dense_cw_oracle(2, kUnit));
  const double expected[] = {(-1 - std::sqrt(17.0)) / 4, -0.5, 0.0, (-1 + std::sqrt(17.0)) / 4};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[static_cast<std::size_t>(i)], expected[i], 1e-12);
}

TEST(DenseOracle, SymmetricWithKnownTrace) {
  for (int n = 1; n <= 8; ++n) {
    const ModelParams p{1.3, -0.7};
    const auto h = dense_cw_oracle(n, p);
    double trace = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      trace += h(i, i);
      for (std::size_t j = 0; j < h.cols(); ++j) ASSERT_EQ(h(i, j), h(j, i));
    }
    EXPECT_NEAR(trace / static_cast<double>(h.rows()), -p.gamma / (2.0 * n), 1e-12) << "N=" << n;
  }
}

TEST(DenseOracle, RefusesLargeSystems) {
  EXPECT_THROW(dense_cw_oracle(kDenseOracleMaxSites + 1, kUnit), DomainError);
  EXPECT_THROW(dense_cw_oracle(0, kUnit), std::invalid_argument);
}

TEST(SymTridiagonalType, Validation) {
  EXPECT_THROW(SymTridiagonal({}, {}), std::invalid_argument);
  EXPECT_THROW(SymTridiagonal({1.0, 2.0}, {}), std::invalid_argument);
  EXPECT_THROW(SymTridiagonal({1.0, NAN}, {0.0}), DomainError);
  EXPECT_THROW(SymTridiagonal({1.0, 2.0}, {INFINITY}), DomainError);
  const SymTridiagonal m({1.0, -3.0}, {0.5});
  EXPECT_DOUBLE_EQ(m.norm_bound(), 4.0);
  EXPECT_EQ(to_dense(m), DenseMatrix(2, 2, {1.0, 0.5, 0.5, -3.0}));
}

TEST(DenseMatrixType, ShapesAndProducts) {
  EXPECT_THROW(DenseMatrix(2, 2, {1.0}), std::invalid_argument);
  const DenseMatrix a(2, 3, {1, 2, 3, 4, 5, 6});
  const DenseMatrix b(3, 1, {1, 0, -1});
  EXPECT_EQ(a * b, DenseMatrix(2, 1, {-2, -2}));
  EXPECT_THROW(b * a * b, std::invalid_argument);
  const auto k = kron(DenseMatrix::identity(2), a);
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k.cols(), 6u);
  EXPECT_EQ(k(3, 5), 6.0);
  EXPECT_EQ(k(0, 5), 0.0);
  ComplexMatrix z(1, 1, {complex(1.0, 1e-3)});
  EXPECT_THROW(real_part(z), DomainError);
}

}  // namespace
}  // namespace cwglt
