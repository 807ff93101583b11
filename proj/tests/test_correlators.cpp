#include "cpforce/correlators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cpforce;

namespace {

PhysicalConfig accel(double z, double a) {
  PhysicalConfig c;
  c.separation = z;
  c.acceleration = a;
  c.scenario = Scenario::Accelerated;
  return c;
}

PhysicalConfig thermal(double z, double t) {
  PhysicalConfig c;
  c.separation = z;
  c.temperature = t;
  c.scenario = Scenario::Thermal;
  return c;
}

} // namespace

TEST(Worldline, ReferencePoints) {
  const auto p0 = worldline(0.0, 1.0);
  EXPECT_DOUBLE_EQ(p0.t, 0.0);
  EXPECT_DOUBLE_EQ(p0.x, 1.0);
  EXPECT_DOUBLE_EQ(p0.y, 0.0);
  EXPECT_DOUBLE_EQ(p0.z, 0.0);
  const auto p1 = worldline(1.0, 1.0);
  EXPECT_NEAR(p1.t, 1.1752012, 1e-7);
  EXPECT_NEAR(p1.x, 1.5430806, 1e-7);
  EXPECT_THROW(worldline(1.0, 0.0), DomainError);
}

TEST(Worldline, StaysOnHyperbola) {
  for (double a : {2.0, 1e-2, 37.0})
    for (double tau : {-3.0, -0.1, 0.0, 0.4, 2.5}) {
      const auto p = worldline(tau, a);
      const double r2 = 1.0 / (a * a);
      EXPECT_NEAR(p.x * p.x - p.t * p.t, r2, 1e-12 * (p.x * p.x + p.t * p.t));
    }
  const auto p = worldline(0.7, 2.0);
  EXPECT_NEAR(p.x * p.x - p.t * p.t, 0.25, 1e-14);
}

TEST(Delay, ReferenceValues) {
  EXPECT_DOUBLE_EQ(lightcone_delay(1.0, 0.0), 1.0);
  EXPECT_NEAR(lightcone_delay(1.0, 2.0), 0.8813736, 1e-7);
  EXPECT_NEAR(correlator_normalization(1.0, 2.0), 1.4142136, 1e-7);
  EXPECT_THROW(lightcone_delay(0.0, 1.0), DomainError);
}

TEST(Delay, SinhIdentityAcrossAccelerations) {
  for (double a = 1e-6; a <= 1e2; a *= 10.0)
    for (double z : {1e-3, 0.3, 1.0, 10.0}) {
      const double rho = lightcone_delay(z, a);
      EXPECT_NEAR(2.0 / a * std::sinh(0.5 * a * rho), z, 1e-12 * z)
          << "a=" << a << " z=" << z;
      EXPECT_LE(rho, z);
    }
}

TEST(Delay, SeriesBranchIsContinuous) {
  const double z = 1.0;
  const double a_switch = 2e-4;
  const double below = lightcone_delay(z, a_switch * (1 - 1e-9));
  const double above = lightcone_delay(z, a_switch * (1 + 1e-9));
  EXPECT_NEAR(below, above, 1e-14);
}

TEST(Kernel, WeightReferenceValue) {
  const auto k = spectral_kernel(accel(1.0, 2.0));
  // sin(asinh 1) = sin(0.8813736) = 0.7716133
  EXPECT_NEAR(k.weight(1.0), 0.7716133, 1e-7);
  EXPECT_NEAR(k.weight(1.0), std::sin(std::asinh(1.0)), 1e-15);
  EXPECT_NEAR(k.normalization, std::sqrt(2.0), 1e-15);
}

TEST(Kernel, ZeroAccelerationRoutesToStatic) {
  const auto k = spectral_kernel(accel(1.0, 0.0));
  EXPECT_EQ(k.delay, 1.0);
  EXPECT_EQ(k.normalization, 1.0);
  EXPECT_EQ(k.temperature, 0.0);
}

TEST(Kernel, UnruhStatisticsMatchThermal) {
  const double a = 0.37;
  const auto ka = spectral_kernel(accel(2.0, a));
  const auto kt = spectral_kernel(thermal(2.0, a / (2.0 * pi)));
  for (double w : {1e-9, 1e-3, 0.2, 1.0, 7.0, 300.0})
    EXPECT_DOUBLE_EQ(ka.statistical_factor(w), kt.statistical_factor(w));
}

TEST(Kernel, LocalInertialLimit) {
  // [w_acc/N_acc - sin(wz)/z] / (sin(wz)/z) shrinks as (az)^2
  const double z = 1.0, w = 1.0;
  auto rel = [&](double a) {
    const auto k = spectral_kernel(accel(z, a));
    const double stat = std::sin(w * z) / z;
    return std::abs((k.weight(w) / k.normalization - stat) / stat);
  };
  const double r = rel(1e-2) / rel(5e-3);
  EXPECT_NEAR(r, 4.0, 0.05);
}

TEST(Kernel, RegularFactorMatchesRealAxis) {
  const auto k = spectral_kernel(thermal(1.0, 0.3));
  for (double w : {1e-4, 5e-3, 0.05, 1.0, 20.0}) {
    const double expect = k.statistical_factor(w) - 2.0 * 0.3 / w;
    EXPECT_NEAR(k.regular_statistical_factor(w).real(), expect,
                1e-10 * std::max(1.0, std::abs(expect)));
    EXPECT_NEAR(k.regular_statistical_factor(w).imag(), 0.0, 1e-15);
  }
  const auto kv = spectral_kernel(PhysicalConfig{});
  EXPECT_EQ(kv.regular_statistical_factor({3.0, 4.0}), 1.0);
}

TEST(SymmetricCorrelation, StaticOriginValue) {
  const auto k = spectral_kernel(PhysicalConfig{});
  QuadratureSpec q;
  const auto r = symmetric_correlation(k, 0.0, q);
  const double expect = 1.0 / (4.0 * pi * pi);
  EXPECT_NEAR(r.value, expect, 1e-6 * expect);
  EXPECT_NEAR(symmetric_correlation_closed(k, 0.0), expect, 1e-15);
}

TEST(SymmetricCorrelation, NumericMatchesClosedForm) {
  QuadratureSpec q;
  for (const auto &c : {thermal(1.0, 0.2), accel(1.0, 0.5)}) {
    const auto k = spectral_kernel(c);
    for (double t : {0.0, 0.3, 0.6}) {
      const double closed = symmetric_correlation_closed(k, t);
      EXPECT_NEAR(symmetric_correlation(k, t, q).value, closed,
                  1e-5 * std::abs(closed));
    }
  }
}

TEST(SymmetricCorrelation, EvenInTime) {
  QuadratureSpec q;
  const auto k = spectral_kernel(thermal(2.0, 0.1));
  for (double t : {0.25, 1.0, 1.5}) {
    const double p = symmetric_correlation(k, t, q).value;
    const double m = symmetric_correlation(k, -t, q).value;
    EXPECT_NEAR(p, m, 1e-9 * std::abs(p));
  }
}

TEST(SymmetricCorrelation, ThermalAccelDifferenceShrinksAsAzSquared) {
  const double z = 1.0;
  auto rel = [&](double a) {
    const double ca = symmetric_correlation_closed(spectral_kernel(accel(z, a)),
                                                   0.0);
    const double ct = symmetric_correlation_closed(
        spectral_kernel(thermal(z, a / (2.0 * pi))), 0.0);
    return std::abs(ca - ct) / ct;
  };
  EXPECT_NEAR(rel(1e-3) / rel(5e-4), 4.0, 0.01);
}

TEST(SymmetricCorrelation, NonFiniteTimeRejected) {
  const auto k = spectral_kernel(PhysicalConfig{});
  EXPECT_THROW(symmetric_correlation(k, INFINITY, {}), DomainError);
}

TEST(DeltaForm, StaticAndAccelerated) {
  const auto d0 = susceptibility_delta_form(spectral_kernel(PhysicalConfig{}));
  EXPECT_DOUBLE_EQ(d0.amplitude.real(), 0.0);
  EXPECT_NEAR(d0.amplitude.imag(), -1.0 / (8.0 * pi), 1e-16);
  EXPECT_DOUBLE_EQ(d0.delay, 1.0);
  const auto d1 = susceptibility_delta_form(spectral_kernel(accel(1.0, 2.0)));
  EXPECT_NEAR(d1.amplitude.imag(), -1.0 / (8.0 * pi * std::sqrt(2.0)), 1e-16);
  EXPECT_NEAR(d1.delay, 0.8813736, 1e-7);
}

TEST(DeltaForm, IndependentOfStatistics) {
  const auto dv = susceptibility_delta_form(spectral_kernel(PhysicalConfig{}));
  const auto dt = susceptibility_delta_form(spectral_kernel(thermal(1.0, 0.5)));
  EXPECT_EQ(dv.amplitude, dt.amplitude);
  EXPECT_EQ(dv.delay, dt.delay);
}
