#pragma once
//! @file quadrature.hpp
//! @brief Quadrature plumbing: adaptive Gauss-Kronrod panels, principal-value
//! and finite-part integrals about a pole, Wynn epsilon tail acceleration and
//! Richardson (Neville) extrapolation to a vanishing regulator.
#include "core.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace cpforce {

//! Regulator, cutoff, tolerance and extrapolation policy for every singular or
//! oscillatory integral in the library.
struct QuadratureSpec {
  //! First regulator value, in units of the characteristic scale.
  double eps0 = 0.1;
  //! Regulator halvings used for the Richardson sequence.
  int eps_levels = 7;
  //! Frequency cutoff in units of omega_char = max(Omega, 1/rho, T, a).
  double omega_max = 200.0;
  //! Time-domain truncation, u_max = time_cutoff / eps.
  double time_cutoff = 45.0;
  double tolerance = 1e-6;
  //! Bisection depth limit per panel.
  int max_subdivisions = 20;
  //! Pole window half-width, in units of the pole location.
  double pv_half_width = 0.25;
};

inline void validate(const QuadratureSpec &q) {
  auto bad = [](const char *what) {
    throw ConfigError(std::string("quadrature: ") + what);
  };
  if (!(q.eps0 > 0.0))
    bad("eps0 must be > 0");
  if (q.eps_levels < 2 || q.eps_levels > 20)
    bad("eps_levels must lie in [2, 20]");
  if (!(q.omega_max >= 50.0))
    bad("omega_max must be >= 50 characteristic units");
  if (!(q.time_cutoff > 0.0))
    bad("time_cutoff must be > 0");
  if (!(q.tolerance > 0.0) || q.tolerance > 1e-2)
    bad("tolerance must lie in (0, 1e-2]");
  if (q.max_subdivisions < 1)
    bad("max_subdivisions must be >= 1");
  if (!(q.pv_half_width > 0.0) || !(q.pv_half_width < 1.0))
    bad("pv_half_width must lie in (0, 1)");
}

//! Value with an absolute error estimate. `l1` accumulates the integral of |f|
//! and feeds the cancellation (roundoff) part of the error budget.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  long panels = 0;

  QuadResult &operator+=(const QuadResult &o) {
    value += o.value;
    error += o.error;
    l1 += o.l1;
    panels += o.panels;
    return *this;
  }
  QuadResult scaled(double s) const {
    return {value * s, error * std::abs(s), l1 * std::abs(s), panels};
  }
  //! Error including a roundoff floor proportional to the cancelled mass.
  double total_error() const {
    return error + 64.0 * std::numeric_limits<double>::epsilon() * l1;
  }
};

namespace detail {

//! One 21-point Kronrod panel with the embedded 10-point Gauss rule; the
//! error is |K - G| without the pessimistic QUADPACK rescaling.
template <class F> QuadResult gk21(const F &f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto &xk = GK::abscissa();
  const auto &wk = GK::weights();
  const auto &wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double f0 = f(c);
  double k = wk[0] * f0, g = 0.0, l1 = wk[0] * std::abs(f0);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double fp = f(c + h * xk[i]);
    const double fm = f(c - h * xk[i]);
    k += wk[i] * (fp + fm);
    l1 += wk[i] * (std::abs(fp) + std::abs(fm));
    if (i % 2 == 1)
      g += wg[i / 2] * (fp + fm);
  }
  return {k * h, std::abs((k - g) * h), l1 * std::abs(h), 1};
}

template <class F>
QuadResult gk_recursive(const F &f, double a, double b, double abs_tol,
                        int depth) {
  const QuadResult p = gk21(f, a, b);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * p.l1;
  if (depth <= 0 || p.error <= std::max(abs_tol, floor))
    return p;
  const double m = 0.5 * (a + b);
  auto r = gk_recursive(f, a, m, 0.5 * abs_tol, depth - 1);
  r += gk_recursive(f, m, b, 0.5 * abs_tol, depth - 1);
  return r;
}

} // namespace detail

//! Adaptive 21-point Gauss-Kronrod on [a, b] to an absolute tolerance.
template <class F>
QuadResult integrate_adaptive(const F &f, double a, double b, double abs_tol,
                              int max_depth) {
  if (a == b)
    return {};
  if (b < a)
    return integrate_adaptive(f, b, a, abs_tol, max_depth).scaled(-1.0);
  return detail::gk_recursive(f, a, b, abs_tol, max_depth);
}

//! Splits [a, b] into panels aligned to multiples of `width` (measured from
//! zero) and integrates each adaptively. Suited to integrands oscillating
//! with half-period `width`.
template <class F>
QuadResult integrate_panels(const F &f, double a, double b, double width,
                            double abs_tol, int max_depth) {
  QuadResult r;
  if (!(b > a))
    return r;
  if (!std::isfinite(width) || width <= 0.0 || width >= (b - a)) {
    return integrate_adaptive(f, a, b, abs_tol, max_depth);
  }
  const double n_est = std::ceil((b - a) / width) + 1.0;
  const double per_panel = abs_tol / n_est;
  double lo = a;
  double k = std::floor(a / width) + 1.0;
  while (lo < b) {
    double hi = std::min(b, k * width);
    if (hi <= lo) {
      k += 1.0;
      continue;
    }
    r += integrate_adaptive(f, lo, hi, per_panel, max_depth);
    lo = hi;
    k += 1.0;
  }
  return r;
}

//******************************************************************************
struct Extrapolated {
  double value = 0.0;
  double residual = 0.0; // |difference of the last two estimates|
};

//! Wynn epsilon algorithm on a sequence of partial sums. Returns the highest
//! even-column estimate and the change relative to the previous one.
inline Extrapolated wynn_epsilon(std::span<const double> sums) {
  const std::size_t n = sums.size();
  if (n == 0)
    return {};
  if (n < 3)
    return {sums.back(), n == 2 ? std::abs(sums[1] - sums[0]) : 0.0};
  // e_prev = column k-1, e_cur = column k
  std::vector<double> e_prev(n + 1, 0.0);
  std::vector<double> e_cur(sums.begin(), sums.end());
  double best = sums.back();
  double prev_best = sums[n - 2];
  std::size_t len = n;
  for (int col = 1; len > 1; ++col) {
    std::vector<double> e_next(len - 1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const double d = e_cur[i + 1] - e_cur[i];
      if (d == 0.0 || !std::isfinite(d)) {
        ok = false;
        break;
      }
      e_next[i] = e_prev[i + 1] + 1.0 / d;
    }
    if (!ok)
      break;
    if (col % 2 == 0) {
      prev_best = e_next.size() >= 2 ? e_next[e_next.size() - 2] : best;
      best = e_next.back();
    }
    e_prev.assign(e_cur.begin(), e_cur.end());
    e_cur = std::move(e_next);
    len = e_cur.size();
  }
  return {best, std::abs(best - prev_best)};
}

//! Polynomial (Neville) extrapolation of values(h) to h = 0. The residual is
//! the change between the two highest-order estimates.
inline Extrapolated extrapolate_to_zero(std::span<const double> h,
                                        std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0 || h.size() != n)
    throw DomainError("extrapolate_to_zero: size mismatch");
  std::vector<double> p(values.begin(), values.end());
  double last = p.back(), before = p.back();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      // p[i] holds the order m-1 estimate built on h[i..i+m-1]
      p[i] = (h[i] * p[i + 1] - h[i + m] * p[i]) / (h[i] - h[i + m]);
    }
    before = last;
    last = p[n - m - 1];
  }
  return {last, std::abs(last - before)};
}

//******************************************************************************
//! Integral of f over [start, inf) for f oscillating with half-period
//! `half_period` (pass +inf for non-oscillatory f). Panels grow geometrically
//! until they reach the half-period grid, then the panel sums are summed with
//! Wynn acceleration. Integration stops at `cap`; an unconverged
//! extrapolation raises AccuracyError.
template <class F>
QuadResult integrate_tail(const F &f, double start, double half_period,
                          double cap, double abs_tol, int max_depth) {
  QuadResult r;
  if (!(start > 0.0))
    throw DomainError("integrate_tail: start must be > 0");
  std::vector<double> aligned_sums;
  const bool oscillating = std::isfinite(half_period) && half_period > 0.0;
  const double panel_tol = abs_tol * 1e-3;
  double lo = start;
  int quiet_panels = 0;
  while (lo < cap) {
    const double next_grid =
        oscillating ? (std::floor(lo / half_period + 1e-9) + 1.0) * half_period
                    : std::numeric_limits<double>::infinity();
    // geometric growth until panels reach the half-period grid
    const double hi = std::min({2.0 * lo, next_grid, cap});
    const bool aligned = oscillating && hi == next_grid;
    const auto p = integrate_adaptive(f, lo, hi, panel_tol, max_depth);
    r += p;
    lo = hi;
    if (aligned) {
      aligned_sums.push_back(r.value);
      if (aligned_sums.size() >= 12) {
        const std::size_t m = std::min<std::size_t>(aligned_sums.size(), 30);
        const auto w = wynn_epsilon(std::span<const double>(
            aligned_sums.data() + aligned_sums.size() - m, m));
        if (w.residual <= abs_tol * 1e-2) {
          r.error += w.residual;
          r.value = w.value;
          return r;
        }
      }
    } else {
      quiet_panels = (p.l1 <= panel_tol) ? quiet_panels + 1 : 0;
      if (quiet_panels >= 3)
        return r;
    }
  }
  if (aligned_sums.size() >= 3) {
    const auto w = wynn_epsilon(aligned_sums);
    if (w.residual > abs_tol)
      throw AccuracyError("oscillatory tail did not converge before cutoff",
                          w.residual);
    r.error += w.residual;
    r.value = w.value;
  }
  return r;
}

//******************************************************************************
namespace detail {
inline double pole_window(double a, double b, double pole, double rel) {
  if (!(pole > a) || !(pole < b))
    throw DomainError("pole must lie strictly inside the integration domain");
  const double edge = std::min(pole - a, b - pole);
  const double scale = pole != 0.0 ? std::abs(pole) : (b - a);
  return std::min(rel * scale, 0.5 * edge);
}
} // namespace detail

//! Principal value of the integral of g(w)/(w - pole) over [a, b], g smooth.
//! A symmetric window [pole - d, pole + d] is handled by odd-part
//! subtraction, the rest adaptively. `half_period` panels oscillatory g.
template <class G>
QuadResult pv_integrate(const G &g, double a, double b, double pole,
                        const QuadratureSpec &q,
                        double half_period =
                            std::numeric_limits<double>::infinity()) {
  const double d = detail::pole_window(a, b, pole, q.pv_half_width);
  const double tol = q.tolerance * 1e-4;
  auto outer = [&](double w) { return g(w) / (w - pole); };
  auto odd = [&](double x) { return (g(pole + x) - g(pole - x)) / x; };
  QuadResult r = integrate_panels(outer, a, pole - d, half_period, tol,
                                  q.max_subdivisions);
  r += integrate_panels(outer, pole + d, b, half_period, tol,
                        q.max_subdivisions);
  r += integrate_panels(odd, 0.0, d, half_period, tol, q.max_subdivisions);
  return r;
}

//! Hadamard finite part of the integral of g(w)/(w - pole)^2 over [a, b].
template <class G>
QuadResult finite_part_integrate(
    const G &g, double a, double b, double pole, const QuadratureSpec &q,
    double half_period = std::numeric_limits<double>::infinity()) {
  const double d = detail::pole_window(a, b, pole, q.pv_half_width);
  const double tol = q.tolerance * 1e-4;
  const double g0 = g(pole);
  auto outer = [&](double w) {
    const double x = w - pole;
    return g(w) / (x * x);
  };
  auto even = [&](double x) {
    return (g(pole + x) + g(pole - x) - 2.0 * g0) / (x * x);
  };
  QuadResult r = integrate_panels(outer, a, pole - d, half_period, tol,
                                  q.max_subdivisions);
  r += integrate_panels(outer, pole + d, b, half_period, tol,
                        q.max_subdivisions);
  r += integrate_panels(even, 0.0, d, half_period, tol, q.max_subdivisions);
  r.value -= 2.0 * g0 / d;
  return r;
}

} // namespace cpforce
