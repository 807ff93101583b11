#pragma once
//! @file sweep.hpp
//! @brief Parameter sweeps, the acceleration/thermal crossover scan and their
//! CSV/JSON emission.
#include "asymptotics.hpp"
#include "config.hpp"
#include "energy.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace cpforce {

struct SweepRow {
  double value = 0.0;
  DimensionlessGroups groups;
  Regime regime = Regime::Crossover;
  std::optional<double> e, e_err, e_oracle, e_oracle_err;
  std::optional<double> e_near, e_far, e_thermal, e_accel, ratio_acc_thermal;
  //! Exit code of a failed point (0 = ok) and its message.
  int error_code = 0;
  std::string error;
};

struct SweepResult {
  RunConfig config;
  std::vector<SweepRow> rows;
  long failures = 0;
};

inline void validate(const SweepSpec &s, Scenario scenario) {
  if (s.count < 2 || s.count > 1000000)
    throw ConfigError("sweep: count must lie in [2, 1e6]");
  if (!(s.start > 0.0) || !(s.stop > 0.0) || !std::isfinite(s.start) ||
      !std::isfinite(s.stop))
    throw ConfigError("sweep: endpoints must be finite and > 0");
  if (s.start == s.stop)
    throw ConfigError("sweep: endpoints coincide");
  if (s.variable == SweepVariable::Acceleration &&
      scenario != Scenario::Accelerated)
    throw ConfigError("sweep: variable a requires the accelerated scenario");
  if (s.variable == SweepVariable::Temperature &&
      scenario != Scenario::Thermal)
    throw ConfigError("sweep: variable T requires the thermal scenario");
}

//! Ascending grid without duplicates.
inline std::vector<double> sweep_grid(const SweepSpec &s) {
  const double lo = std::min(s.start, s.stop), hi = std::max(s.start, s.stop);
  std::vector<double> g(static_cast<std::size_t>(s.count));
  const double n = s.count - 1;
  for (int i = 0; i < s.count; ++i) {
    if (s.log_spacing)
      g[i] = lo * std::pow(hi / lo, i / n);
    else
      g[i] = lo + (hi - lo) * (i / n);
  }
  g.front() = lo;
  g.back() = hi;
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.size() != static_cast<std::size_t>(s.count))
    throw ConfigError("sweep: grid has duplicate points at this resolution");
  return g;
}

inline PhysicalConfig with_swept(PhysicalConfig c, SweepVariable v, double x) {
  switch (v) {
  case SweepVariable::Separation:
    c.separation = x;
    break;
  case SweepVariable::Acceleration:
    c.acceleration = x;
    break;
  case SweepVariable::Temperature:
    c.temperature = x;
    break;
  case SweepVariable::Gap:
    c.gap = x;
    break;
  }
  return c;
}

//! Closed forms applicable to the scenario. The static laws are the a, T -> 0
//! limits and are emitted for every scenario.
inline void fill_closed_forms(SweepRow &row, const PhysicalConfig &c) {
  const double l = c.coupling, w = c.gap, z = c.separation;
  row.e_near = e_near_static(l, w, z);
  row.e_far = e_far_static(l, w, z);
  if (c.scenario == Scenario::Thermal && c.temperature > 0.0)
    row.e_thermal = e_thermal_classical(l, w, z, c.temperature);
  if (c.scenario == Scenario::Accelerated && c.acceleration > 0.0) {
    row.e_thermal =
        e_thermal_classical(l, w, z, unruh_temperature(c.acceleration));
    row.e_accel = e_accelerated(l, w, z, c.acceleration);
    row.ratio_acc_thermal = acc_to_thermal_ratio(c.acceleration * z);
  }
}

namespace detail {

//! Runs body(i) for i in [0, n) on `jobs` threads; each index is written by
//! exactly one worker, so output order is independent of scheduling.
template <class Body> void parallel_for(std::size_t n, int jobs, Body body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++)
        body(i);
    });
  for (auto &t : pool)
    t.join();
}

} // namespace detail

inline SweepResult run_sweep(const RunConfig &rc, int jobs = 1) {
  validate(rc.sweep, rc.physical.scenario);
  validate(rc.quadrature);
  const auto grid = sweep_grid(rc.sweep);
  SweepResult out;
  out.config = rc;
  out.rows.resize(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    SweepRow &row = out.rows[i];
    row.value = grid[i];
    const PhysicalConfig c =
        with_swept(rc.physical, rc.sweep.variable, grid[i]);
    row.groups = groups(c);
    row.regime = classify_regime(row.groups);
    try {
      require_valid(c);
      if (rc.sweep.closed_forms)
        fill_closed_forms(row, c);
      const auto e = energy_vf(c, rc.quadrature);
      row.e = e.value;
      row.e_err = e.error;
      if (rc.sweep.oracle) {
        const auto o = energy_vf_oracle(c, rc.quadrature);
        row.e_oracle = o.value;
        row.e_oracle_err = o.error;
      }
    } catch (const std::exception &ex) {
      row.error_code = static_cast<int>(exit_code_for(ex));
      row.error = ex.what();
    }
  });
  for (const auto &r : out.rows)
    out.failures += r.error_code != 0;
  return out;
}

//! True when more than 10% of the points failed.
inline bool exceeds_failure_quota(const SweepResult &r) {
  return 10 * r.failures > static_cast<long>(r.rows.size());
}

//******************************************************************************
// Emission

namespace detail {

inline std::string num17(double v) { return format17(v); }

inline std::string opt17(const std::optional<double> &v) {
  return v ? num17(*v) : std::string();
}

inline nlohmann::json opt_json(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json quad_json(const QuadratureSpec &q) {
  return {{"eps0", q.eps0},
          {"eps_levels", q.eps_levels},
          {"omega_max", q.omega_max},
          {"time_cutoff", q.time_cutoff},
          {"tolerance", q.tolerance},
          {"max_subdivisions", q.max_subdivisions},
          {"pv_half_width", q.pv_half_width}};
}

inline nlohmann::json physical_json(const PhysicalConfig &c) {
  return {{"coupling", c.coupling},
          {"gap", c.gap},
          {"separation", c.separation},
          {"acceleration", c.acceleration},
          {"temperature", c.temperature},
          {"scenario", std::string(to_string(c.scenario))}};
}

} // namespace detail

inline constexpr const char *sweep_csv_header =
    "swept_var,value,omega_z,a_z,T_z,regime,E,E_err,E_oracle,E_oracle_err,"
    "E_near,E_far,E_thermal,E_accel,ratio_acc_thermal";

inline void write_csv(std::ostream &os, const SweepResult &r) {
  using detail::num17;
  using detail::opt17;
  const std::string var(to_string(r.config.sweep.variable));
  os << sweep_csv_header << '\n';
  for (const auto &row : r.rows) {
    os << var << ',' << num17(row.value) << ',' << num17(row.groups.omega_z) << ',' << num17(row.groups.a_z) << ','
       << num17(row.groups.t_z) << ',' << to_string(row.regime) << ',';
    if (row.error_code != 0)
      os << "error:" << row.error_code << ',';
    else
      os << opt17(row.e) << ',';
    os << opt17(row.e_err) << ',' << opt17(row.e_oracle) << ','
       << opt17(row.e_oracle_err) << ',' << opt17(row.e_near) << ','
       << opt17(row.e_far) << ',' << opt17(row.e_thermal) << ','
       << opt17(row.e_accel) << ',' << opt17(row.ratio_acc_thermal) << '\n';
  }
}

inline nlohmann::json sweep_json(const SweepResult &r) {
  using detail::opt_json;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : r.rows) {
    nlohmann::json j = {
        {"swept_var", std::string(to_string(r.config.sweep.variable))},
        {"value", row.value},
        {"omega_z", row.groups.omega_z},
        {"a_z", row.groups.a_z},
        {"T_z", row.groups.t_z},
        {"regime", std::string(to_string(row.regime))},
        {"E", opt_json(row.e)},
        {"E_err", opt_json(row.e_err)},
        {"E_oracle", opt_json(row.e_oracle)},
        {"E_oracle_err", opt_json(row.e_oracle_err)},
        {"E_near", opt_json(row.e_near)},
        {"E_far", opt_json(row.e_far)},
        {"E_thermal", opt_json(row.e_thermal)},
        {"E_accel", opt_json(row.e_accel)},
        {"ratio_acc_thermal", opt_json(row.ratio_acc_thermal)}};
    if (row.error_code != 0)
      j["E"] = "error:" + std::to_string(row.error_code);
    if (!row.error.empty())
      j["message"] = row.error;
    rows.push_back(std::move(j));
  }
  const auto &s = r.config.sweep;
  return {{"metadata",
           {{"version", std::string(version)},
            {"convention", std::string(convention_map)},
            {"timestamp", detail::utc_timestamp()},
            {"physical", detail::physical_json(r.config.physical)},
            {"quadrature", detail::quad_json(r.config.quadrature)},
            {"sweep",
             {{"variable", std::string(to_string(s.variable))},
              {"start", s.start},
              {"stop", s.stop},
              {"count", s.count},
              {"spacing", s.log_spacing ? "log" : "linear"},
              {"oracle", s.oracle},
              {"closed_forms", s.closed_forms}}},
            {"failures", r.failures}}},
          {"rows", rows}};
}

//******************************************************************************
// Crossover scan: engine E_acc(z) against the engine thermal energy at T_U.

struct CrossoverRow {
  double z = 0.0;
  double a_z = 0.0;
  double e_acc = 0.0, e_acc_err = 0.0;
  double e_thermal = 0.0, e_thermal_err = 0.0;
  double ratio = 0.0;
  //! ratio * (az)^2 / 2, tends to 1 if the closed-form laws hold.
  double ratio_scaled = 0.0;
};

struct CrossoverResult {
  RunConfig config;
  std::vector<CrossoverRow> rows;
  double threshold = 0.5;
  double z_star = 0.0;
  double z_star_a = 0.0;
  //! |ratio - 1| / (az)^2 at the smallest az (the short-distance band).
  double short_distance_band = 0.0;
  //! ratio * (az)^2 / 2 at the largest az.
  double long_distance_scaled = 0.0;
  bool long_distance_ok = false;
};

inline CrossoverResult run_crossover(const RunConfig &rc, int jobs = 1) {
  const auto &p = rc.physical;
  if (p.scenario != Scenario::Accelerated || !(p.acceleration > 0.0))
    throw ConfigError("crossover: needs the accelerated scenario with a > 0");
  if (rc.sweep.variable != SweepVariable::Separation)
    throw ConfigError("crossover: sweep variable must be z");
  const double th = rc.sweep.crossover_threshold;
  if (!(th > 0.0) || !(th < 1.0))
    throw ConfigError("crossover: threshold must lie in (0, 1)");
  validate(rc.sweep, p.scenario);
  validate(rc.quadrature);
  const auto grid = sweep_grid(rc.sweep);
  const double a = p.acceleration;
  if (!(grid.front() * a < 1.0) || !(grid.back() * a > 1.0))
    throw RangeError("crossover: z range must span az << 1 to az >> 1 (got az "
                     "in [" +
                     detail::num17(grid.front() * a) + ", " +
                     detail::num17(grid.back() * a) +
                     "]); widen the range around z = 1/a");

  CrossoverResult out;
  out.config = rc;
  out.threshold = th;
  out.rows.resize(grid.size());
  std::vector<std::string> errors(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    CrossoverRow &row = out.rows[i];
    row.z = grid[i];
    row.a_z = a * grid[i];
    PhysicalConfig acc = p;
    acc.separation = grid[i];
    PhysicalConfig thm = acc;
    thm.scenario = Scenario::Thermal;
    thm.acceleration = 0.0;
    thm.temperature = unruh_temperature(a);
    try {
      const auto ea = energy_vf(acc, rc.quadrature);
      const auto et = energy_vf(thm, rc.quadrature);
      row.e_acc = ea.value;
      row.e_acc_err = ea.error;
      row.e_thermal = et.value;
      row.e_thermal_err = et.error;
      row.ratio = ea.value / et.value;
      row.ratio_scaled = row.ratio * row.a_z * row.a_z / 2.0;
    } catch (const std::exception &ex) {
      errors[i] = ex.what();
    }
  });
  for (const auto &e : errors)
    if (!e.empty())
      throw AccuracyError("crossover: " + e, 0.0);

  // first departure beyond the threshold, interpolated in log z
  std::optional<double> zs;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double d0 = std::abs(out.rows[i - 1].ratio - 1.0);
    const double d1 = std::abs(out.rows[i].ratio - 1.0);
    if (d0 <= th && d1 > th) {
      const double t = (th - d0) / (d1 - d0);
      zs = std::exp(std::log(out.rows[i - 1].z) +
                    t * std::log(out.rows[i].z / out.rows[i - 1].z));
      break;
    }
  }
  if (!zs)
    throw RangeError("crossover: ratio never departs from 1 by the threshold "
                     "inside the range; extend z upwards");
  out.z_star = *zs;
  out.z_star_a = *zs * a;
  const auto &first = out.rows.front();
  out.short_distance_band =
      std::abs(first.ratio - 1.0) / (first.a_z * first.a_z);
  out.long_distance_scaled = out.rows.back().ratio_scaled;
  out.long_distance_ok = out.rows.back().a_z >= 10.0 &&
                         std::abs(out.long_distance_scaled - 1.0) <= 0.05;
  return out;
}

inline constexpr const char *crossover_csv_header =
    "z,a_z,E_acc,E_acc_err,E_thermal,E_thermal_err,ratio,ratio_scaled";

inline void write_csv(std::ostream &os, const CrossoverResult &r) {
  using detail::num17;
  os << crossover_csv_header << '\n';
  for (const auto &row : r.rows)
    os << num17(row.z) << ',' << num17(row.a_z) << ',' << num17(row.e_acc)
       << ',' << num17(row.e_acc_err) << ',' << num17(row.e_thermal) << ','
       << num17(row.e_thermal_err) << ',' << num17(row.ratio) << ','
       << num17(row.ratio_scaled) << '\n';
}

inline nlohmann::json crossover_json(const CrossoverResult &r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : r.rows)
    rows.push_back({{"z", row.z},
                    {"a_z", row.a_z},
                    {"E_acc", row.e_acc},
                    {"E_acc_err", row.e_acc_err},
                    {"E_thermal", row.e_thermal},
                    {"E_thermal_err", row.e_thermal_err},
                    {"ratio", row.ratio},
                    {"ratio_scaled", row.ratio_scaled}});
  return {{"metadata",
           {{"version", std::string(version)},
            {"convention", std::string(convention_map)},
            {"timestamp", detail::utc_timestamp()},
            {"physical", detail::physical_json(r.config.physical)},
            {"quadrature", detail::quad_json(r.config.quadrature)}}},
          {"summary",
           {{"threshold", r.threshold},
            {"z_star", r.z_star},
            {"z_star_a", r.z_star_a},
            {"short_distance_band", r.short_distance_band},
            {"long_distance_scaled_ratio", r.long_distance_scaled},
            {"long_distance_ok", r.long_distance_ok}}},
          {"rows", rows}};
}

} // namespace cpforce
