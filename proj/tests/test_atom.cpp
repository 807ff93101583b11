#include "cpforce/atom_response.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace cpforce;

TEST(AtomResponse, ReferenceValues) {
  EXPECT_EQ(atomic_susceptibility(0.0, 1.0), std::complex<double>(0.0, 0.0));
  const auto chi = atomic_susceptibility(std::numbers::pi / 2.0, 1.0);
  EXPECT_NEAR(chi.real(), 0.0, 1e-16);
  EXPECT_NEAR(chi.imag(), -1.0, 1e-15);
  EXPECT_NEAR(atomic_symmetric_correlation(std::numbers::pi, 1.0), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(atomic_symmetric_correlation(0.0, 3.0), 1.0);
}

TEST(AtomResponse, SusceptibilityOddCorrelationEven) {
  for (double u : {0.1, 1.3, 7.0}) {
    EXPECT_DOUBLE_EQ(atomic_susceptibility(-u, 2.0).imag(),
                     -atomic_susceptibility(u, 2.0).imag());
    EXPECT_DOUBLE_EQ(atomic_symmetric_correlation(-u, 2.0),
                     atomic_symmetric_correlation(u, 2.0));
  }
}

TEST(AtomResponse, GapScaling) {
  for (double s : {0.5, 3.0})
    for (double u : {0.2, 1.1}) {
      EXPECT_NEAR(atomic_susceptibility(u, s).imag(),
                  atomic_susceptibility(s * u, 1.0).imag(), 1e-15);
      EXPECT_NEAR(atomic_symmetric_correlation(u, s),
                  atomic_symmetric_correlation(s * u, 1.0), 1e-15);
    }
}

TEST(HeisenbergOracle, MatchesClosedFormsAtRandomTimes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(-20.0, 20.0), gd(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double u = ud(rng), w = gd(rng);
    const auto o = heisenberg_oracle(u, w);
    const auto chi = atomic_susceptibility(u, w);
    EXPECT_NEAR(o.susceptibility.real(), chi.real(), 1e-12);
    EXPECT_NEAR(o.susceptibility.imag(), chi.imag(), 1e-12);
    EXPECT_NEAR(o.symmetric_correlation, atomic_symmetric_correlation(u, w),
                1e-12);
  }
}

TEST(HeisenbergOracle, QuarterPeriodFixesSign) {
  const auto o = heisenberg_oracle(std::numbers::pi / 2.0, 1.0);
  EXPECT_NEAR(o.susceptibility.imag(), -1.0, 1e-14);
}

TEST(HeisenbergOracle, ExcitedStateFlipsSusceptibility) {
  for (double u : {0.3, 2.0}) {
    const auto g = heisenberg_oracle(u, 1.5, AtomState::Ground);
    const auto e = heisenberg_oracle(u, 1.5, AtomState::Excited);
    EXPECT_NEAR(e.susceptibility.imag(), -g.susceptibility.imag(), 1e-14);
    EXPECT_NEAR(e.symmetric_correlation, g.symmetric_correlation, 1e-14);
  }
}
