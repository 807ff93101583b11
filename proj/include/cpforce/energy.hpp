#pragma once
//! @file energy.hpp
//! @brief Fourth-order vacuum-fluctuation interaction energy of two ground-state
//! atoms on stationary trajectories, evaluated two independent ways.
//!
//! With u1 = tau - tau', u2 = tau' - tau'', u3 = tau'' - tau''' (all >= 0)
//! the energy shift of atom A is
//!
//!   dE = 4 i lambda^4 int du1 du2 du3
//!          C(u1 + u2 + u3) chi^F(u2) chi^A(u1) chi^B(u3).
//!
//! chi^F is a delta on the effective light cone u2 = rho, which collapses the
//! u2 integral exactly. The correlation C entering the pair is its
//! propagating component C_+ (phase sin(w (rho + t))), the channel in which
//! the field fluctuation correlated at B reaches A along the light cone. The
//! counter-propagating component C_+(-t) yields a pure on-resonance term of
//! the form |G|^2 Im alpha^2 that pairs with radiation reaction; it is not
//! part of the pair potential computed here.
//!
//! Sign chain: 4i * (-i/(8 pi N)) * (1/2)^4 * (-i)^2 * 1/(8 pi^2 N) =
//! -1/(256 pi^3 N^2), so dE = -lambda^4 P / (256 pi^3 N^2) with P > 0.
//!
//! Frequency-domain route (production):
//!   P = Im int_0^inf dw s(w) e^{2 i w rho} F(w + i0),
//!   F(w) = Omega^2 / (Omega^2 - w^2)^2,
//! from the analytic u1, u3 integrals. The double pole at w = Omega is split
//! by Sokhotski-Plemelj into a Hadamard finite part and a resonant delta
//! contribution.
//!
//! Time-domain route (oracle):
//!   P = lim_{eps->0} int_0^inf ds e^{-eps s} K(s) c_+(s + 2 rho),
//!   K(s) = int_0^s sin(Omega u) sin(Omega (s - u)) du,
//! with c_+ the position-space sine transform of the statistical factor.
#include "atom_response.hpp"
#include "core.hpp"
#include "correlators.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace cpforce {

enum class Method { FrequencyDomain, TimeDomainOracle, ClosedForm };

inline std::string_view to_string(Method m) {
  switch (m) {
  case Method::FrequencyDomain:
    return "frequency-domain";
  case Method::TimeDomainOracle:
    return "time-domain-oracle";
  case Method::ClosedForm:
    return "closed-form";
  }
  return "unknown";
}

struct EnergyDiagnostics {
  long panels = 0;
  //! Wynn (tail) or Richardson (regulator) residual.
  double extrapolation_residual = 0.0;
  //! Finite-part and resonant pieces of P (frequency route only).
  double principal_part = 0.0;
  double resonant_part = 0.0;
  double imaginary_residual = 0.0;
};

struct EnergyResult {
  double value = 0.0;
  double error = 0.0;
  Method method = Method::FrequencyDomain;
  Regime regime = Regime::Crossover;
  std::string convention{convention_map};
  EnergyDiagnostics diagnostics;
};

//******************************************************************************
//! Integrand factory for the stationary triple integral after the chi^F delta
//! collapse. Shared by both evaluators.
struct StationaryReduction {
  PhysicalConfig config;
  SpectralKernel kernel;
  DeltaForm field_susceptibility;

  double gap() const { return config.gap; }
  double delay() const { return field_susceptibility.delay; }

  //! Argument of the correlation for ordered times: tau - tau'''.
  static double correlation_argument(double u1, double u2, double u3) {
    return u1 + u2 + u3;
  }

  //! Atomic susceptibility in the Dicke normalisation used by the engine.
  std::complex<double> atom_susceptibility(double u) const {
    return dicke_dipole_scale * dicke_dipole_scale *
           atomic_susceptibility(u, config.gap);
  }

  //! 4 i lambda^4 * chi^F amplitude, without lambda^4.
  std::complex<double> unit_prefactor() const {
    return std::complex<double>(0.0, 4.0) * field_susceptibility.amplitude;
  }

  //! C_+(u1 + rho + u3) chi^A(u1) chi^B(u3).
  std::complex<double> collapsed_integrand(double u1, double u3) const {
    return propagating_correlation(kernel, u1 + delay() + u3) *
           atom_susceptibility(u1) * atom_susceptibility(u3);
  }

  //! int_0^s sin(Omega u) sin(Omega (s - u)) du.
  double atomic_pair_kernel(double s) const {
    const double w = config.gap;
    const double ws = w * s;
    if (std::abs(ws) < 0.1) {
      // (sin x - x cos x)/(2 Omega) = x^3/(6 Omega) (1 - x^2/10 + x^4/280
      //   - x^6/15120 + x^8/1330560); the direct form cancels as eps/x^2
      const double x2 = ws * ws;
      return ws * x2 / (6.0 * w) *
             (1.0 + x2 * (-1.0 / 10.0 +
                          x2 * (1.0 / 280.0 +
                                x2 * (-1.0 / 15120.0 + x2 / 1330560.0))));
    }
    return 0.5 * (std::sin(ws) / w - s * std::cos(ws));
  }

  //! Complex factor multiplying lambda^4 * P; its imaginary part must vanish.
  std::complex<double> unit_chain() const {
    const double d2 = dicke_dipole_scale * dicke_dipole_scale;
    const std::complex<double> chi_phase(0.0, -1.0); // chi = -i sin
    return unit_prefactor() * (d2 * d2) * chi_phase * chi_phase *
           (SpectralKernel::prefactor / kernel.normalization);
  }
};

inline StationaryReduction stationary_reduction(const PhysicalConfig &c) {
  require_valid(c);
  StationaryReduction r;
  r.config = c;
  r.kernel = spectral_kernel(c);
  r.field_susceptibility = susceptibility_delta_form(r.kernel);
  return r;
}

namespace detail {

//! Rough magnitude of P, used only to turn relative tolerances into absolute
//! ones.
inline double p_scale(const StationaryReduction &r) {
  const double w = r.gap(), rho = r.delay();
  return std::min(pi / (4.0 * w), 1.0 / (2.0 * rho * w * w)) +
         pi * r.kernel.temperature / (w * w);
}

inline EnergyResult finish(const StationaryReduction &r, double p,
                           double p_err, const QuadratureSpec &q,
                           Method method, EnergyDiagnostics diag) {
  const double l2 = r.config.coupling * r.config.coupling;
  const double l4 = l2 * l2;
  const std::complex<double> chain = r.unit_chain();
  EnergyResult out;
  out.method = method;
  out.value = l4 * (chain.real() * p);
  out.error = l4 * std::abs(chain.real()) * p_err;
  diag.imaginary_residual = l4 * std::abs(chain.imag() * p);
  out.diagnostics = diag;
  out.regime = classify_regime(groups(r.config));
  if (diag.imaginary_residual > 10.0 * q.tolerance * std::abs(out.value))
    throw ConsistencyError("energy has a non-vanishing imaginary part");
  if (!std::isfinite(out.value))
    throw AccuracyError("energy is not finite", out.error);
  return out;
}

} // namespace detail

//******************************************************************************
//! Real-axis frequency route: the resonance is split by Sokhotski-Plemelj
//! into a Hadamard finite part and an on-resonance delta contribution. The two
//! pieces cancel to O(Omega rho), so this route is kept for Omega rho <~ 10
//! cross-checks; energy_vf is the production path.
inline EnergyResult energy_vf_real_axis(const PhysicalConfig &c,
                                        const QuadratureSpec &q = {}) {
  validate(q);
  const auto r = stationary_reduction(c);
  const SpectralKernel &k = r.kernel;
  const double w0 = c.gap;
  const double rho = r.delay();
  const double x2 = 2.0 * rho;
  const double half_period = pi / x2;
  const double delta = q.pv_half_width * w0;
  const double w_split = 2.0 * w0;
  const double abs_tol = q.tolerance * 1e-3 * detail::p_scale(r);
  const int depth = q.max_subdivisions;

  auto h_im = [&](double w) { return k.weighted_sine(w, x2); };
  auto f_res = [&](double w) {
    const double d = w0 * w0 - w * w;
    return w0 * w0 / (d * d);
  };
  auto regular = [&](double w) { // F minus its two pole terms at w0
    const double p = w0 + w;
    return 0.25 / (p * p) + 0.25 / (w0 * p);
  };
  auto outer = [&](double w) { return h_im(w) * f_res(w); };

  QuadResult principal =
      integrate_panels(outer, 0.0, w0 - delta, half_period, abs_tol, depth);
  principal += integrate_panels(outer, w0 + delta, w_split, half_period,
                                abs_tol, depth);
  // window: F = (1/4)/x^2 - 1/(4 w0 x) + regular(w), x = w - w0
  principal += finite_part_integrate(h_im, w0 - delta, w0 + delta, w0, q,
                                     half_period)
                   .scaled(0.25);
  principal +=
      pv_integrate(h_im, w0 - delta, w0 + delta, w0, q, half_period)
          .scaled(-0.25 / w0);
  principal += integrate_panels([&](double w) { return h_im(w) * regular(w); },
                                w0 - delta, w0 + delta, half_period, abs_tol,
                                depth);
  const auto tail = integrate_tail(outer, w_split, half_period,
                                   q.omega_max * k.omega_char, abs_tol, depth);
  principal += tail;

  // Sokhotski-Plemelj: Im 1/(x+i0)^2 = pi delta'(x), Im 1/(x+i0) = -pi delta(x)
  const double s0 = k.statistical_factor(w0);
  const double ds0 = k.statistical_factor_derivative(w0);
  const double h_re = s0 * std::cos(x2 * w0);
  const double dh_re = ds0 * std::cos(x2 * w0) - x2 * s0 * std::sin(x2 * w0);
  const double resonant = -0.25 * pi * dh_re + 0.25 * pi / w0 * h_re;

  const double p = principal.value + resonant;
  const double p_err =
      principal.total_error() +
      64.0 * std::numeric_limits<double>::epsilon() *
          (std::abs(resonant) + 0.25 * pi * std::abs(x2 * s0));

  EnergyDiagnostics diag;
  diag.panels = principal.panels;
  diag.extrapolation_residual = tail.error;
  diag.principal_part = principal.value;
  diag.resonant_part = resonant;
  return detail::finish(r, p, p_err, q, Method::FrequencyDomain, diag);
}

//! Production path: the same frequency integral with the w + i0 prescription
//! realised by rotating the contour onto the ray w = t e^{i theta} in the
//! upper half-plane, where e^{2 i w rho} decays and the pole at Omega - i0 is
//! never crossed. The 1/w pole of the thermal factor is removed first:
//!   s(w) e^{2iw rho} = s~(w) e^{2iw rho} + (2T/w)(e^{2iw rho} - 1) + 2T/w,
//! and the last term contributes Im int F(w + i0)/w dw = pi/(2 Omega^2)
//! exactly, from the double pole alone.
inline EnergyResult energy_vf(const PhysicalConfig &c,
                              const QuadratureSpec &q = {}) {
  validate(q);
  const auto r = stationary_reduction(c);
  const SpectralKernel &k = r.kernel;
  using cd = std::complex<double>;
  const double w0 = c.gap;
  const double rho = r.delay();
  const double t2 = 2.0 * k.temperature;
  const cd dir = std::polar(1.0, 0.25 * pi);
  const double abs_tol = q.tolerance * 1e-3 * detail::p_scale(r);
  const int depth = q.max_subdivisions;

  auto f = [&](double t) {
    const cd w = t * dir;
    const cd y(-2.0 * rho * w.imag(), 2.0 * rho * w.real()); // 2 i w rho
    const cd e = std::exp(y);
    cd g = k.regular_statistical_factor(w) * e;
    if (t2 > 0.0) {
      if (std::abs(y) < 1e-3)
        g += t2 * cd(0.0, 2.0 * rho) * (1.0 + y * (0.5 + y / 6.0));
      else
        g += t2 * (e - 1.0) / w;
    }
    const cd d = w0 * w0 - w * w;
    return (g * (w0 * w0) / (d * d) * dir).imag();
  };

  // geometric panels across every feature scale: 1/rho, Omega, 2 pi T
  double lo_scale = std::min(1.0 / rho, w0), hi_scale = std::max(1.0 / rho, w0);
  if (k.temperature > 0.0) {
    lo_scale = std::min(lo_scale, 2.0 * pi * k.temperature);
    hi_scale = std::max(hi_scale, 2.0 * pi * k.temperature);
  }
  double t = 1e-3 * lo_scale;
  QuadResult acc = integrate_adaptive(f, 0.0, t, abs_tol * 1e-3, depth);
  for (; t < 8.0 * hi_scale; t *= 2.0)
    acc += integrate_adaptive(f, t, 2.0 * t, abs_tol * 1e-3, depth);
  acc += integrate_tail(f, t, std::numeric_limits<double>::infinity(),
                        q.omega_max * k.omega_char, abs_tol, depth);
  const double pole_term = pi * k.temperature / (w0 * w0);

  EnergyDiagnostics diag;
  diag.panels = acc.panels;
  diag.principal_part = acc.value;
  diag.resonant_part = pole_term;
  return detail::finish(r, acc.value + pole_term, acc.total_error(), q,
                        Method::FrequencyDomain, diag);
}

//! Oracle path: regulated time-domain integral over the total atomic time
//! s = u1 + u3, extrapolated to a vanishing regulator.
inline EnergyResult energy_vf_oracle(const PhysicalConfig &c,
                                     const QuadratureSpec &q = {}) {
  validate(q);
  const auto r = stationary_reduction(c);
  const double w0 = c.gap;
  const double rho = r.delay();
  const double half_period = pi / w0;
  const double abs_tol = q.tolerance * 1e-4 * detail::p_scale(r);
  const int depth = q.max_subdivisions;

  std::vector<double> eps, vals;
  QuadResult worst;
  long panels = 0;
  double eps_k = q.eps0 * w0;
  for (int level = 0; level < q.eps_levels; ++level, eps_k *= 0.5) {
    auto f = [&](double s) {
      return std::exp(-eps_k * s) * r.atomic_pair_kernel(s) *
             sine_transform_closed(r.kernel, s + 2.0 * rho);
    };
    const double s_max = q.time_cutoff / eps_k;
    // resolve the light-cone structure of c_+ on the scale rho first
    QuadResult acc;
    double lo = 0.0;
    double hi = std::min(2.0 * rho, half_period);
    while (hi < half_period) {
      acc += integrate_adaptive(f, lo, hi, abs_tol * 1e-2, depth);
      lo = hi;
      hi *= 4.0;
    }
    acc += integrate_panels(f, lo, s_max, half_period, abs_tol, depth);
    eps.push_back(eps_k);
    vals.push_back(acc.value);
    panels += acc.panels;
    if (acc.total_error() > worst.total_error())
      worst = acc;
  }
  const auto ex = extrapolate_to_zero(eps, vals);
  if (ex.residual > q.tolerance * std::abs(ex.value))
    throw AccuracyError("time-domain oracle: regulator extrapolation did not "
                        "converge",
                        ex.residual);
  EnergyDiagnostics diag;
  diag.panels = panels;
  diag.extrapolation_residual = ex.residual;
  // Neville weights amplify per-level errors by at most a few units here
  const double p_err = ex.residual + 8.0 * worst.total_error();
  return detail::finish(r, ex.value, p_err, q, Method::TimeDomainOracle, diag);
}

} // namespace cpforce
