#include "cpforce/energy.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace cpforce;

namespace {

PhysicalConfig make(double z, double a = 0.0, double t = 0.0) {
  PhysicalConfig c;
  c.coupling = 1.0;
  c.separation = z;
  c.acceleration = a;
  c.temperature = t;
  c.scenario = a > 0.0   ? Scenario::Accelerated
               : t > 0.0 ? Scenario::Thermal
                         : Scenario::StaticVacuum;
  return c;
}

// Imaginary-frequency oracle. The statistical sum over Matsubara frequencies
// xi_n = 2 pi n T (n = 0 weighted 1/2) or, in vacuum, the integral over xi,
// of e^{-2 xi rho} Omega^2 / (Omega^2 + xi^2)^2. Written directly from the
// Wick-rotated response functions, independent of the engine code.
double matsubara_energy(const PhysicalConfig &c) {
  const double w0 = c.gap, l2 = c.coupling * c.coupling;
  double rho = c.separation, norm = c.separation, temp = c.temperature;
  if (c.scenario == Scenario::Accelerated && c.acceleration > 0.0) {
    const double h = 0.5 * c.acceleration * c.separation;
    rho = 2.0 * std::asinh(h) / c.acceleration;
    norm = c.separation * std::sqrt(1.0 + h * h);
    temp = c.acceleration / (2.0 * pi);
  }
  auto f = [&](double xi) {
    const double d = w0 * w0 + xi * xi;
    return std::exp(-2.0 * xi * rho) * w0 * w0 / (d * d);
  };
  double p = 0.0;
  if (temp > 0.0) {
    const double step = 2.0 * pi * temp;
    p = 0.5 * f(0.0);
    for (long n = 1;; ++n) {
      const double term = f(n * step);
      p += term;
      if (term < 1e-18 * p)
        break;
    }
    p *= step;
  } else {
    boost::math::quadrature::exp_sinh<double> es;
    p = es.integrate(f, 0.0, std::numeric_limits<double>::infinity());
  }
  return -l2 * l2 * p / (256.0 * pi * pi * pi * norm * norm);
}

} // namespace

TEST(Engine, VacuumMatchesImaginaryFrequencyOracle) {
  for (double z : {0.01, 0.3, 1.0, 10.0, 300.0}) {
    const auto c = make(z);
    const double ref = matsubara_energy(c);
    EXPECT_NEAR(energy_vf(c).value, ref, 1e-7 * std::abs(ref)) << "z=" << z;
  }
}

TEST(Engine, ThermalMatchesMatsubaraSum) {
  for (auto [z, t] : {std::pair{1.0, 0.1}, {5.0, 0.02}, {50.0, 0.01},
                      {0.2, 0.05}}) {
    const auto c = make(z, 0.0, t);
    const double ref = matsubara_energy(c);
    EXPECT_NEAR(energy_vf(c).value, ref, 1e-7 * std::abs(ref))
        << "z=" << z << " T=" << t;
  }
}

TEST(Engine, AcceleratedMatchesMatsubaraSum) {
  for (auto [z, a] : {std::pair{1.0, 0.05}, {1.0, 0.5}, {20.0, 0.05},
                      {100.0, 0.1}}) {
    const auto c = make(z, a);
    const double ref = matsubara_energy(c);
    EXPECT_NEAR(energy_vf(c).value, ref, 1e-7 * std::abs(ref))
        << "z=" << z << " a=" << a;
  }
}

TEST(Engine, RealAxisRouteAgreesAtShortRange) {
  for (const auto &c : {make(0.1), make(1.0), make(1.0, 0.0, 0.05),
                        make(0.5, 0.1)}) {
    const double a = energy_vf(c).value;
    const double b = energy_vf_real_axis(c).value;
    EXPECT_NEAR(a, b, 1e-6 * std::abs(a));
  }
}

TEST(Engine, TimeDomainOracleAgrees) {
  for (const auto &c : {make(1.0), make(3.0, 0.0, 0.05), make(2.0, 0.2)}) {
    const auto a = energy_vf(c);
    const auto b = energy_vf_oracle(c);
    EXPECT_EQ(b.method, Method::TimeDomainOracle);
    EXPECT_NEAR(a.value, b.value, 1e-5 * std::abs(a.value));
  }
}

TEST(Engine, AttractiveEverywhere) {
  for (double z : {1e-3, 0.1, 1.0, 30.0, 1e3})
    for (const auto &c : {make(z), make(z, 1e-3), make(z, 0.0, 1e-3)})
      EXPECT_LT(energy_vf(c).value, 0.0);
}

TEST(Engine, CouplingEntersAsFourthPower) {
  auto c = make(2.0, 0.0, 0.03);
  const double e1 = energy_vf(c).value;
  c.coupling = 2.0;
  EXPECT_EQ(energy_vf(c).value, 16.0 * e1);
}

TEST(Engine, ScaleHomogeneity) {
  const auto c = make(2.0, 0.1);
  const double e = energy_vf(c).value;
  for (double s : {0.5, 4.0}) {
    auto cs = c;
    cs.gap *= s;
    cs.acceleration *= s;
    cs.separation /= s;
    EXPECT_NEAR(energy_vf(cs).value, s * e, 1e-8 * std::abs(s * e));
  }
}

TEST(Engine, SmoothLimitsToStatic) {
  const double e0 = energy_vf(make(3.0)).value;
  EXPECT_NEAR(energy_vf(make(3.0, 1e-10)).value, e0, 1e-9 * std::abs(e0));
  EXPECT_NEAR(energy_vf(make(3.0, 0.0, 1e-10)).value, e0, 1e-9 * std::abs(e0));
}

TEST(Engine, ResultMetadata) {
  const auto r = energy_vf(make(100.0));
  EXPECT_EQ(r.method, Method::FrequencyDomain);
  EXPECT_EQ(r.regime, Regime::FarZone);
  EXPECT_GT(r.error, 0.0);
  EXPECT_LT(r.error, 1e-6 * std::abs(r.value));
  EXPECT_FALSE(r.convention.empty());
}

TEST(Engine, RejectsInvalidConfigs) {
  auto c = make(1.0, 0.1);
  c.temperature = 0.1;
  EXPECT_THROW(energy_vf(c), UnsupportedScenario);
  c = make(-1.0);
  EXPECT_THROW(energy_vf(c), ConfigError);
}

TEST(Reduction, UnitChainIsRealAndNegative) {
  const auto r = stationary_reduction(make(1.5, 0.3));
  const auto chain = r.unit_chain();
  EXPECT_NEAR(chain.imag(), 0.0, 1e-18);
  const double n = r.kernel.normalization;
  EXPECT_NEAR(chain.real(), -1.0 / (256.0 * pi * pi * pi * n * n), 1e-18);
}

TEST(Reduction, PairKernelSeriesBranch) {
  const auto r = stationary_reduction(make(1.0));
  for (double s : {1e-4, 1.001e-3, 0.0999, 0.1001, 0.5, 3.0}) {
    // direct quadrature of int_0^s sin(u) sin(s - u) du
    const auto q = integrate_adaptive(
        [&](double u) { return std::sin(u) * std::sin(s - u); }, 0.0, s,
        1e-16, 30);
    EXPECT_NEAR(r.atomic_pair_kernel(s), q.value,
                1e-10 * std::abs(q.value) + 1e-20);
  }
}
