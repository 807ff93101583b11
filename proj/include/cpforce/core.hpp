#pragma once
//! @file core.hpp
//! @brief Physical parameter model, natural-unit conventions, dimensionless
//! groups and regime classification.
//!
//! Units: hbar = c = k_B = 1. Energies, temperatures, accelerations and
//! inverse lengths all share one unit.
//!
//! Atomic convention: atoms are two-level systems written with Dicke
//! (spin-1/2) operators R_i = sigma_i / 2. The gap Omega is the level
//! splitting, and the field couples to lambda * R_2. With this convention the
//! gap Omega is the omega_0 of the closed-form near/far-zone laws, and the
//! static coefficients 1/(1024 pi^2) and 1/(512 pi^3) are reproduced exactly.
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpforce {

inline constexpr double pi = std::numbers::pi;

//! Library version, stamped into sweep metadata.
inline constexpr std::string_view version = "0.1.0";

//! Dipole operator scale: coupling operator is R_2 = sigma_2 / 2.
inline constexpr double dicke_dipole_scale = 0.5;

//! Human-readable description of the gap/coupling mapping, carried in results.
inline constexpr std::string_view convention_map =
    "dicke-spin-1/2: Omega = omega_0 (level splitting), coupling operator "
    "sigma_2/2";

//******************************************************************************
// Errors. Each kind maps onto one CLI exit code.

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class UnsupportedScenario : public ConfigError {
public:
  using ConfigError::ConfigError;
};

//! Numerical limit (extrapolation, tail acceleration) failed to converge.
class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string &what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

//! Result violates an internal consistency condition (sign/convention bug).
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! A scan range does not contain the feature it was asked to locate.
class RangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ExitCode : int {
  Ok = 0,
  ValidationFailure = 1,
  Config = 2,
  Accuracy = 3,
  SweepQuota = 4,
  Range = 5,
};

//! Exit code for an exception escaping an evaluation.
inline ExitCode exit_code_for(const std::exception &e) {
  if (dynamic_cast<const ConfigError *>(&e) ||
      dynamic_cast<const DomainError *>(&e))
    return ExitCode::Config;
  if (dynamic_cast<const RangeError *>(&e))
    return ExitCode::Range;
  return ExitCode::Accuracy;
}

//! Shortest text that round-trips a double (17 significant digits).
inline std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

//******************************************************************************
enum class Scenario { StaticVacuum, Thermal, Accelerated };

inline std::string_view to_string(Scenario s) {
  switch (s) {
  case Scenario::StaticVacuum:
    return "static_vacuum";
  case Scenario::Thermal:
    return "thermal";
  case Scenario::Accelerated:
    return "accelerated";
  }
  return "unknown";
}

inline Scenario parse_scenario(std::string_view s) {
  if (s == "static_vacuum" || s == "static" || s == "vacuum")
    return Scenario::StaticVacuum;
  if (s == "thermal")
    return Scenario::Thermal;
  if (s == "accelerated")
    return Scenario::Accelerated;
  throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

//! Full physical parameter set, natural units.
struct PhysicalConfig {
  double coupling = 0.1;     // lambda
  double gap = 1.0;          // Omega
  double separation = 1.0;   // z
  double acceleration = 0.0; // a
  double temperature = 0.0;  // T
  Scenario scenario = Scenario::StaticVacuum;
};

struct Violation {
  enum class Severity { Error, Warning };
  std::string field;
  std::string message;
  Severity severity = Severity::Error;

  bool is_error() const { return severity == Severity::Error; }
};

//! Ratio above which a/Omega or T/Omega is flagged as outside the validity
//! window of the vacuum-fluctuation-only treatment.
inline constexpr double validity_window_ratio = 0.1;

//! Returns every violated invariant. Errors make the config unusable; warnings
//! flag results outside the a << Omega, T << Omega window.
inline std::vector<Violation> validate_config(const PhysicalConfig &c) {
  using S = Violation::Severity;
  std::vector<Violation> out;
  auto positive = [&](double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v))
      out.push_back({name, std::string(name) + " must be finite and > 0",
                     S::Error});
  };
  auto nonneg = [&](double v, const char *name) {
    if (!(v >= 0.0) || !std::isfinite(v))
      out.push_back({name, std::string(name) + " must be finite and >= 0",
                     S::Error});
  };
  positive(c.coupling, "coupling");
  positive(c.gap, "gap");
  positive(c.separation, "separation");
  nonneg(c.acceleration, "acceleration");
  nonneg(c.temperature, "temperature");

  if (c.acceleration > 0.0 && c.temperature > 0.0) {
    out.push_back({"scenario",
                   "unsupported scenario: acceleration and temperature both "
                   "non-zero",
                   S::Error});
  }
  switch (c.scenario) {
  case Scenario::StaticVacuum:
    if (c.acceleration != 0.0 || c.temperature != 0.0)
      out.push_back(
          {"scenario", "static_vacuum requires acceleration = temperature = 0",
           S::Error});
    break;
  case Scenario::Thermal:
    if (c.acceleration != 0.0)
      out.push_back({"acceleration", "thermal requires acceleration = 0",
                     S::Error});
    break;
  case Scenario::Accelerated:
    if (c.temperature != 0.0)
      out.push_back({"temperature", "accelerated requires temperature = 0",
                     S::Error});
    break;
  }

  if (c.gap > 0.0) {
    if (c.temperature / c.gap >= validity_window_ratio)
      out.push_back({"temperature",
                     "T << Omega validity window violated (T/Omega = " +
                         std::to_string(c.temperature / c.gap) + ")",
                     S::Warning});
    if (c.acceleration / c.gap >= validity_window_ratio)
      out.push_back({"acceleration",
                     "a << Omega validity window violated (a/Omega = " +
                         std::to_string(c.acceleration / c.gap) + ")",
                     S::Warning});
  }
  return out;
}

inline bool has_errors(const std::vector<Violation> &v) {
  for (const auto &x : v)
    if (x.is_error())
      return true;
  return false;
}

//! Throws ConfigError (UnsupportedScenario for the combined a,T case) listing
//! every error-level violation.
inline void require_valid(const PhysicalConfig &c) {
  const auto v = validate_config(c);
  std::string msg;
  bool unsupported = false;
  for (const auto &x : v) {
    if (!x.is_error())
      continue;
    if (!msg.empty())
      msg += "; ";
    msg += x.field + ": " + x.message;
    if (x.message.rfind("unsupported scenario", 0) == 0)
      unsupported = true;
  }
  if (msg.empty())
    return;
  if (unsupported)
    throw UnsupportedScenario(msg);
  throw ConfigError(msg);
}

//******************************************************************************
struct DimensionlessGroups {
  double omega_z = 0.0; // retardation
  double a_z = 0.0;     // inertial breakdown
  double t_over_omega = 0.0;
  double a_over_omega = 0.0;
  double t_z = 0.0; // thermal wavelength
};

inline DimensionlessGroups groups(const PhysicalConfig &c) {
  return {c.gap * c.separation, c.acceleration * c.separation,
          c.temperature / c.gap, c.acceleration / c.gap,
          c.temperature * c.separation};
}

enum class Regime { NearZone, FarZone, ThermalClassical, AcceleratedNonThermal,
                    Crossover };

inline std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::NearZone:
    return "near_zone";
  case Regime::FarZone:
    return "far_zone";
  case Regime::ThermalClassical:
    return "thermal_classical";
  case Regime::AcceleratedNonThermal:
    return "accelerated_non_thermal";
  case Regime::Crossover:
    return "crossover";
  }
  return "unknown";
}

struct RegimeThresholds {
  double lo = 0.1;
  double hi = 10.0;
};

//! Thermal and accelerated labels take precedence over retardation labels.
inline Regime classify_regime(const DimensionlessGroups &g,
                              const RegimeThresholds &th = {}) {
  if (!(th.lo > 0.0) || !(th.lo < th.hi))
    throw ConfigError("regime thresholds must satisfy 0 < lo < hi");
  if (g.t_z > th.hi)
    return Regime::ThermalClassical;
  if (g.a_z > th.hi)
    return Regime::AcceleratedNonThermal;
  const bool quiet = g.a_z < th.lo && g.t_z < th.lo;
  if (quiet && g.omega_z < th.lo)
    return Regime::NearZone;
  if (quiet && g.omega_z > th.hi)
    return Regime::FarZone;
  return Regime::Crossover;
}

} // namespace cpforce
