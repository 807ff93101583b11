#pragma once
//! @file correlators.hpp
//! @brief Scalar-field statistical functions along stationary worldlines.
//!
//! All three scenarios share the spectral form
//!
//!   C^F(t)   = 1/(8 pi^2 N) int_0^inf dw  w(w) s(w) 2 cos(w t)
//!   chi^F(t) = 1/(8 pi^2 N) int_0^inf dw  w(w) (e^{-iwt} - e^{iwt})
//!
//! with w(w) = sin(w rho). The static and thermal cases have rho = N = z;
//! co-accelerated atoms have rho = (2/a) asinh(az/2) and N = z sqrt(1 +
//! (az/2)^2). The statistical factor s is 1 (vacuum), coth(w/2T) (thermal) or
//! coth(pi w/a) (accelerated).
#include "core.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace cpforce {

struct SpacetimePoint {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

//! Hyperbolic worldline of proper acceleration a, parameterised by proper time.
inline SpacetimePoint worldline(double tau, double a) {
  if (!(a > 0.0))
    throw DomainError("worldline: acceleration must be > 0");
  return {std::sinh(a * tau) / a, std::cosh(a * tau) / a, 0.0, 0.0};
}

//! Effective proper-time light-cone delay between the two worldlines.
//! Reduces to z for a = 0.
inline double lightcone_delay(double z, double a) {
  if (!(z > 0.0) || !(a >= 0.0))
    throw DomainError("lightcone_delay: need z > 0, a >= 0");
  const double h = 0.5 * a * z;
  if (h < 1e-4) {
    // asinh(h)/h = 1 - h^2/6 + 3h^4/40 - ...
    const double h2 = h * h;
    return z * (1.0 - h2 / 6.0 + 3.0 * h2 * h2 / 40.0);
  }
  return 2.0 * std::asinh(h) / a;
}

//! Normalisation N(z, a) = z sqrt(1 + (az/2)^2).
inline double correlator_normalization(double z, double a) {
  const double h = 0.5 * a * z;
  return z * std::sqrt(1.0 + h * h);
}

//******************************************************************************
//! Frequency-domain representation of the field statistical functions.
struct SpectralKernel {
  Scenario scenario = Scenario::StaticVacuum;
  double delay = 1.0;         // rho
  double normalization = 1.0; // N
  //! Temperature of the statistical factor: T, or a/2pi when accelerated.
  double temperature = 0.0;
  //! Characteristic frequency max(Omega, 1/rho, T, a) for regulators.
  double omega_char = 1.0;

  static constexpr double prefactor = 1.0 / (8.0 * pi * pi);

  double weight(double w) const { return std::sin(w * delay); }

  //! Statistical factor s(w) of the symmetric correlation.
  double statistical_factor(double w) const {
    if (temperature <= 0.0)
      return 1.0;
    const double x = 0.5 * w / temperature;
    if (x < 1e-6)
      return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
  }

  //! ds/dw.
  double statistical_factor_derivative(double w) const {
    if (temperature <= 0.0)
      return 0.0;
    const double x = 0.5 * w / temperature;
    if (x < 1e-6)
      return (-1.0 / (x * x) + 1.0 / 3.0) * 0.5 / temperature;
    if (x > 350.0)
      return 0.0;
    const double e = std::exp(-2.0 * x);
    const double om = 1.0 - e;
    return -4.0 * e / (om * om) * 0.5 / temperature;
  }

  //! s(w) sin(w x), finite at w = 0 where coth diverges.
  double weighted_sine(double w, double x) const {
    if (temperature <= 0.0)
      return std::sin(w * x);
    const double y = 0.5 * w / temperature;
    if (y < 1e-6) {
      if (w == 0.0)
        return 2.0 * temperature * x;
      // sin(wx)/y + y sin(wx)/3 with sin(wx)/y = 2T x sinc(wx)
      const double wx = w * x;
      const double sinc =
          std::abs(wx) < 1e-4 ? 1.0 - wx * wx / 6.0 : std::sin(wx) / wx;
      return 2.0 * temperature * x * sinc + y * std::sin(wx) / 3.0;
    }
    return std::sin(w * x) / std::tanh(y);
  }

  //! s(w) - 2T/w continued to complex w (1 in vacuum). Analytic except at the
  //! imaginary poles w = 2 pi i n T, n != 0.
  std::complex<double> regular_statistical_factor(std::complex<double> w) const {
    if (temperature <= 0.0)
      return 1.0;
    const std::complex<double> x = 0.5 * w / temperature;
    if (std::abs(x) < 1e-2) {
      // coth x - 1/x = x/3 - x^3/45 + 2x^5/945 - x^7/4725
      const auto x2 = x * x;
      return x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 -
                                                         x2 / 4725.0)));
    }
    // coth x for Re x >= 0 without overflow
    const auto e = std::exp(-2.0 * x);
    return (1.0 + e) / (1.0 - e) - 1.0 / x;
  }
};

//! Builds the scenario kernel. a = 0 in the accelerated scenario is routed to
//! the static forms before any 1/a appears.
inline SpectralKernel spectral_kernel(const PhysicalConfig &c) {
  require_valid(c);
  SpectralKernel k;
  k.scenario = c.scenario;
  const double z = c.separation;
  switch (c.scenario) {
  case Scenario::StaticVacuum:
    k.delay = z;
    k.normalization = z;
    break;
  case Scenario::Thermal:
    k.delay = z;
    k.normalization = z;
    k.temperature = c.temperature;
    break;
  case Scenario::Accelerated:
    if (c.acceleration == 0.0) {
      k.delay = z;
      k.normalization = z;
    } else {
      k.delay = lightcone_delay(z, c.acceleration);
      k.normalization = correlator_normalization(z, c.acceleration);
      k.temperature = c.acceleration / (2.0 * pi);
    }
    break;
  }
  k.omega_char = std::max({c.gap, 1.0 / k.delay, c.temperature,
                           c.acceleration});
  return k;
}

//******************************************************************************
//! Closed form of int_0^inf s(w) sin(w x) dw (distributional, Abel-summed):
//! 1/x in vacuum, pi T coth(pi T x) at temperature T.
inline double sine_transform_closed(const SpectralKernel &k, double x) {
  if (k.temperature <= 0.0)
    return 1.0 / x;
  const double y = pi * k.temperature * x;
  if (std::abs(y) < 1e-6)
    return 1.0 / x + pi * k.temperature * y / 3.0;
  return pi * k.temperature / std::tanh(y);
}

//! Propagating (retarded) component of the symmetric correlation,
//!   C_+(t) = 1/(8 pi^2 N) int_0^inf dw s(w) sin(w (rho + t)),
//! in closed form. C^F(t) = C_+(t) + C_+(-t).
inline double propagating_correlation(const SpectralKernel &k, double t) {
  return SpectralKernel::prefactor / k.normalization *
         sine_transform_closed(k, k.delay + t);
}

//! Closed-form symmetric correlation (position-space form).
inline double symmetric_correlation_closed(const SpectralKernel &k, double t) {
  return propagating_correlation(k, t) + propagating_correlation(k, -t);
}

//! Numerically evaluated C^F(t): the frequency integral is regulated by
//! e^{-eps w}, evaluated for a geometric eps sequence and extrapolated to
//! eps -> 0. Throws AccuracyError if the extrapolation residual exceeds the
//! tolerance.
inline QuadResult symmetric_correlation(const SpectralKernel &k, double t,
                                        const QuadratureSpec &q) {
  validate(q);
  if (!std::isfinite(t))
    throw DomainError("symmetric_correlation: t must be finite");
  const double xp = k.delay + t;
  const double xm = k.delay - t;
  const double xmax = std::max(std::abs(xp), std::abs(xm));
  const double half_period = pi / xmax;

  std::vector<double> eps, vals;
  QuadResult acc;
  double eps_k = q.eps0 / k.omega_char;
  for (int level = 0; level < q.eps_levels; ++level, eps_k *= 0.5) {
    auto f = [&](double w) {
      return (k.weighted_sine(w, xp) + k.weighted_sine(w, xm)) *
             std::exp(-eps_k * w);
    };
    const double cutoff = 40.0 / eps_k;
    const auto r = integrate_panels(f, 0.0, cutoff, half_period,
                                    q.tolerance * 1e-6 / eps_k,
                                    q.max_subdivisions);
    eps.push_back(eps_k);
    vals.push_back(r.value);
    acc.error = std::max(acc.error, r.total_error());
    acc.l1 = std::max(acc.l1, r.l1);
    acc.panels += r.panels;
  }
  const auto ex = extrapolate_to_zero(eps, vals);
  const double scale = SpectralKernel::prefactor / k.normalization;
  const double tol = q.tolerance * std::max(std::abs(ex.value), 1.0 / xmax);
  if (ex.residual > tol)
    throw AccuracyError("symmetric_correlation: eps extrapolation did not "
                        "converge",
                        ex.residual * scale);
  acc.value = ex.value * scale;
  acc.error = (acc.error + ex.residual) * scale;
  acc.l1 *= scale;
  return acc;
}

//******************************************************************************
//! chi^F(t) = amplitude * [delta(t - delay) - delta(t + delay)].
struct DeltaForm {
  std::complex<double> amplitude;
  double delay = 0.0;
};

//! The field susceptibility is statistics-independent and supported on the
//! effective light cone.
inline DeltaForm susceptibility_delta_form(const SpectralKernel &k) {
  return {std::complex<double>(0.0, -1.0 / (8.0 * pi * k.normalization)),
          k.delay};
}

} // namespace cpforce
