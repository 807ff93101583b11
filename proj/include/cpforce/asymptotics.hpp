#pragma once
//! @file asymptotics.hpp
//! @brief Closed-form asymptotic energies, Unruh temperature, crossover scale,
//! ratio laws and the fitted thermal-like correction coefficient.
//!
//!   near zone (Omega z << 1):     E = -c_near  lambda^4 / (Omega z^2)
//!   far zone  (Omega z >> 1):     E = -c_far   lambda^4 / (Omega^2 z^3)
//!   classical thermal (Tz >> 1):  E = -c_th    lambda^4 T / (Omega^2 z^2)
//!   accelerated (az >> 1):        E = -c_acc   lambda^4 / (Omega^2 a z^4)
//!
//! with c_near = 1/(1024 pi^2), c_far = c_th = 1/(512 pi^3) and
//! c_acc = 1/(512 pi^4).
#include "core.hpp"
#include "energy.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cpforce {

//! Closed-form coefficients. Tests override single entries to check that the
//! validation suite catches a perturbed law.
struct ClosedFormCoefficients {
  double near = 1.0 / (1024.0 * pi * pi);
  double far = 1.0 / (512.0 * pi * pi * pi);
  double thermal = 1.0 / (512.0 * pi * pi * pi);
  double accelerated = 1.0 / (512.0 * pi * pi * pi * pi);
};

inline double e_near_static(double lambda, double gap, double z,
                            const ClosedFormCoefficients &c = {}) {
  const double l2 = lambda * lambda;
  return -c.near * l2 * l2 / (gap * z * z);
}

inline double e_far_static(double lambda, double gap, double z,
                           const ClosedFormCoefficients &c = {}) {
  const double l2 = lambda * lambda;
  return -c.far * l2 * l2 / (gap * gap * z * z * z);
}

inline double e_thermal_classical(double lambda, double gap, double z,
                                  double temperature,
                                  const ClosedFormCoefficients &c = {}) {
  const double l2 = lambda * lambda;
  return -c.thermal * l2 * l2 * temperature / (gap * gap * z * z);
}

inline double e_accelerated(double lambda, double gap, double z, double a,
                            const ClosedFormCoefficients &c = {}) {
  if (!(a > 0.0))
    throw DomainError("e_accelerated: acceleration must be > 0");
  const double l2 = lambda * lambda;
  const double z2 = z * z;
  return -c.accelerated * l2 * l2 / (gap * gap * a * z2 * z2);
}

inline double unruh_temperature(double a) {
  if (!(a >= 0.0))
    throw DomainError("unruh_temperature: acceleration must be >= 0");
  return a / (2.0 * pi);
}

//! z_a = 1/a; no crossover exists for inertial atoms.
inline std::optional<double> crossover_length(double a) {
  if (!(a >= 0.0))
    throw DomainError("crossover_length: acceleration must be >= 0");
  if (a == 0.0)
    return std::nullopt;
  return 1.0 / a;
}

//! E_acc / E_th(T_U) of the two long-distance laws.
inline double acc_to_thermal_ratio(double az) {
  if (!(az > 0.0))
    throw DomainError("acc_to_thermal_ratio: az must be > 0");
  return 2.0 / (az * az);
}

//******************************************************************************
//! Power law -coefficient * lambda^4 * z^z_power * X^aux_power / Omega^k.
struct AsymptoticForm {
  Regime regime = Regime::Crossover;
  double coefficient = 0.0;
  int z_power = 0;
  //! Power of T (thermal), a (accelerated) or Omega (static).
  int aux_power = 0;
  std::function<bool(const DimensionlessGroups &)> valid;
};

inline std::vector<AsymptoticForm>
asymptotic_forms(const ClosedFormCoefficients &c = {},
                 const RegimeThresholds &th = {}) {
  return {
      {Regime::NearZone, c.near, -2, -1,
       [th](const DimensionlessGroups &g) {
         return g.omega_z < th.lo && g.t_z < th.lo && g.a_z < th.lo;
       }},
      {Regime::FarZone, c.far, -3, -2,
       [th](const DimensionlessGroups &g) {
         return g.omega_z > th.hi && g.t_z < th.lo && g.a_z < th.lo;
       }},
      {Regime::ThermalClassical, c.thermal, -2, 1,
       [th](const DimensionlessGroups &g) {
         return g.t_z > th.hi && g.t_over_omega < validity_window_ratio;
       }},
      {Regime::AcceleratedNonThermal, c.accelerated, -4, -1,
       [th](const DimensionlessGroups &g) {
         return g.a_z > th.hi && g.a_over_omega < validity_window_ratio;
       }},
  };
}

//! d log f / d log x by a symmetric difference in log x.
template <class F> double log_log_slope(const F &f, double x, double h = 1e-3) {
  const double up = std::exp(h), dn = std::exp(-h);
  return (std::log(std::abs(f(x * up))) - std::log(std::abs(f(x * dn)))) /
         (2.0 * h);
}

namespace detail {
//! Root of log(f(x)) on [lo, hi] to relative accuracy ~1e-14.
template <class F> double log_root(const F &f, double lo, double hi) {
  auto g = [&](double lx) { return std::log(f(std::exp(lx))); };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      g, std::log(lo), std::log(hi),
      boost::math::tools::eps_tolerance<double>(50), iters);
  return std::exp(0.5 * (r.first + r.second));
}
} // namespace detail

//! Omega z at which the near- and far-zone laws are equal (2/pi).
inline double near_far_crossing(const ClosedFormCoefficients &c = {}) {
  return detail::log_root(
      [&](double x) { return e_near_static(1, 1, x, c) / e_far_static(1, 1, x, c); },
      1e-3, 1e3);
}

//! T z at which the classical thermal law equals the far-zone law (1).
inline double far_thermal_crossing(const ClosedFormCoefficients &c = {}) {
  return detail::log_root(
      [&](double tz) {
        return e_thermal_classical(1, 1, 1, tz, c) / e_far_static(1, 1, 1, c);
      },
      1e-3, 1e3);
}

//! a z at which the accelerated law equals the thermal law at T_U (sqrt 2).
inline double thermal_accel_crossing(const ClosedFormCoefficients &c = {}) {
  return detail::log_root(
      [&](double az) {
        return e_accelerated(1, 1, 1, az, c) /
               e_thermal_classical(1, 1, 1, unruh_temperature(az), c);
      },
      1e-3, 1e3);
}

//******************************************************************************
//! Fit grid for the subleading correction -K (lambda^4/z) (X/Omega)^2, where
//! X = T (thermal) or T_U (accelerated) and X z runs over [x_lo, x_hi].
struct CorrectionFitSpec {
  double x_lo = 1e-3;
  double x_hi = 1e-1;
  int points = 9;
};

struct CorrectionPoint {
  double x = 0.0;          // X z
  double correction = 0.0; // E(X) - E(0)
  double k = 0.0;          // pointwise coefficient
};

struct CorrectionFit {
  Scenario scenario = Scenario::Thermal;
  double k = 0.0;
  //! Sample standard deviation of the pointwise coefficients. The spread is
  //! dominated by the next order in X z, not by quadrature noise.
  double sigma = 0.0;
  //! Fitted power of X, expected 2.
  double exponent = 0.0;
  std::vector<CorrectionPoint> points;
};

//! Fits the thermal-like correction coefficient from engine differences
//! E(X) - E(0) at the separation and gap of `base`. Refuses grids outside the
//! quantum regime (X z >= 1) or the T, a << Omega window.
inline CorrectionFit thermal_like_correction_scaling(
    const PhysicalConfig &base, const CorrectionFitSpec &spec = {},
    const QuadratureSpec &q = {}) {
  if (base.scenario == Scenario::StaticVacuum)
    throw ConfigError("correction fit needs a thermal or accelerated scenario");
  if (!(spec.x_lo > 0.0) || !(spec.x_lo < spec.x_hi) || spec.points < 3)
    throw ConfigError("correction fit: need 0 < x_lo < x_hi and >= 3 points");
  const double z = base.separation, w0 = base.gap;
  const bool accel = base.scenario == Scenario::Accelerated;
  if (spec.x_hi >= 1.0)
    throw DomainError("correction fit refused: X z must stay << 1");
  const double x_max = spec.x_hi / z;
  const double drive_max = accel ? 2.0 * pi * x_max : x_max;
  if (drive_max / w0 >= validity_window_ratio)
    throw DomainError("correction fit refused: grid leaves the T, a << Omega "
                      "window");

  PhysicalConfig vac = base;
  vac.scenario = Scenario::StaticVacuum;
  vac.acceleration = vac.temperature = 0.0;
  const double l2 = base.coupling * base.coupling;
  const double e0 = energy_vf(vac, q).value;

  CorrectionFit fit;
  fit.scenario = base.scenario;
  const double step =
      std::log(spec.x_hi / spec.x_lo) / static_cast<double>(spec.points - 1);
  double sum = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < spec.points; ++i) {
    const double xz = spec.x_lo * std::exp(step * i);
    const double x = xz / z;
    PhysicalConfig c = base;
    c.temperature = accel ? 0.0 : x;
    c.acceleration = accel ? 2.0 * pi * x : 0.0;
    const double d = energy_vf(c, q).value - e0;
    const double k = -d * z / (l2 * l2 * (x / w0) * (x / w0));
    fit.points.push_back({xz, d, k});
    sum += k;
    const double lx = std::log(x), ly = std::log(std::abs(d));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = spec.points;
  fit.k = sum / n;
  double var = 0.0;
  for (const auto &p : fit.points)
    var += (p.k - fit.k) * (p.k - fit.k);
  fit.sigma = std::sqrt(var / (n - 1.0));
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

} // namespace cpforce
