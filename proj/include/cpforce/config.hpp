#pragma once
//! @file config.hpp
//! @brief INI run configuration: [physical], [quadrature] and [sweep]
//! sections, command-line overrides and config-directory lookup.
#include "core.hpp"
#include "quadrature.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace cpforce {

enum class SweepVariable { Separation, Acceleration, Temperature, Gap };

inline std::string_view to_string(SweepVariable v) {
  switch (v) {
  case SweepVariable::Separation:
    return "z";
  case SweepVariable::Acceleration:
    return "a";
  case SweepVariable::Temperature:
    return "T";
  case SweepVariable::Gap:
    return "Omega";
  }
  return "unknown";
}

inline SweepVariable parse_sweep_variable(std::string_view s) {
  if (s == "z" || s == "separation")
    return SweepVariable::Separation;
  if (s == "a" || s == "acceleration")
    return SweepVariable::Acceleration;
  if (s == "T" || s == "temperature")
    return SweepVariable::Temperature;
  if (s == "Omega" || s == "gap")
    return SweepVariable::Gap;
  throw ConfigError("unknown sweep variable '" + std::string(s) + "'");
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::Separation;
  double start = 1.0;
  double stop = 100.0;
  int count = 16;
  bool log_spacing = true;
  bool oracle = false;
  bool closed_forms = true;
  //! Relative departure of E_acc/E_th(T_U) from 1 that defines z*.
  double crossover_threshold = 0.5;
};

struct RunConfig {
  PhysicalConfig physical;
  QuadratureSpec quadrature;
  SweepSpec sweep;
};

namespace detail {

inline double parse_double(const std::string &key, const std::string &text) {
  double v = 0.0;
  const char *b = text.data();
  const char *e = b + text.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  return v;
}

inline int parse_int(const std::string &key, const std::string &text) {
  int v = 0;
  const char *b = text.data();
  const char *e = b + text.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  return v;
}

inline bool parse_bool(const std::string &key, const std::string &text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on")
    return true;
  if (text == "false" || text == "0" || text == "no" || text == "off")
    return false;
  throw ConfigError("key '" + key + "': '" + text + "' is not a boolean");
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct KeyInfo {
  const char *section;
  const char *key;
};

inline const std::vector<KeyInfo> &known_keys() {
  static const std::vector<KeyInfo> keys = {
      {"physical", "coupling"},       {"physical", "lambda"},
      {"physical", "gap"},            {"physical", "separation"},
      {"physical", "acceleration"},   {"physical", "temperature"},
      {"physical", "scenario"},       {"quadrature", "eps0"},
      {"quadrature", "eps_levels"},   {"quadrature", "omega_max"},
      {"quadrature", "time_cutoff"},  {"quadrature", "tolerance"},
      {"quadrature", "max_subdivisions"},
      {"quadrature", "pv_half_width"}, {"sweep", "variable"},
      {"sweep", "start"},             {"sweep", "stop"},
      {"sweep", "count"},             {"sweep", "spacing"},
      {"sweep", "oracle"},            {"sweep", "closed_forms"},
      {"sweep", "crossover_threshold"},
  };
  return keys;
}

} // namespace detail

//! Sets one qualified key ("section.key"). Unknown keys are errors.
inline void set_key(RunConfig &rc, const std::string &section,
                    const std::string &key, const std::string &raw) {
  using namespace detail;
  const std::string value = trim(raw);
  const std::string q = section + "." + key;
  auto num = [&] { return parse_double(q, value); };
  if (section == "physical") {
    auto &p = rc.physical;
    if (key == "coupling" || key == "lambda")
      p.coupling = num();
    else if (key == "gap")
      p.gap = num();
    else if (key == "separation")
      p.separation = num();
    else if (key == "acceleration")
      p.acceleration = num();
    else if (key == "temperature")
      p.temperature = num();
    else if (key == "scenario")
      p.scenario = parse_scenario(value);
    else
      throw ConfigError("unknown key '" + q + "'");
  } else if (section == "quadrature") {
    auto &s = rc.quadrature;
    if (key == "eps0")
      s.eps0 = num();
    else if (key == "eps_levels")
      s.eps_levels = parse_int(q, value);
    else if (key == "omega_max")
      s.omega_max = num();
    else if (key == "time_cutoff")
      s.time_cutoff = num();
    else if (key == "tolerance")
      s.tolerance = num();
    else if (key == "max_subdivisions")
      s.max_subdivisions = parse_int(q, value);
    else if (key == "pv_half_width")
      s.pv_half_width = num();
    else
      throw ConfigError("unknown key '" + q + "'");
  } else if (section == "sweep") {
    auto &s = rc.sweep;
    if (key == "variable")
      s.variable = parse_sweep_variable(value);
    else if (key == "start")
      s.start = num();
    else if (key == "stop")
      s.stop = num();
    else if (key == "count")
      s.count = parse_int(q, value);
    else if (key == "spacing") {
      if (value != "log" && value != "linear")
        throw ConfigError("key '" + q + "': spacing must be log or linear");
      s.log_spacing = value == "log";
    } else if (key == "oracle")
      s.oracle = parse_bool(q, value);
    else if (key == "closed_forms")
      s.closed_forms = parse_bool(q, value);
    else if (key == "crossover_threshold")
      s.crossover_threshold = num();
    else
      throw ConfigError("unknown key '" + q + "'");
  } else {
    throw ConfigError("unknown section '[" + section + "]'");
  }
}

//! Applies "key=value" where key is "section.key" or an unambiguous bare key.
inline void apply_override(RunConfig &rc, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string key = detail::trim(assignment.substr(0, eq));
  const std::string value = assignment.substr(eq + 1);
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    set_key(rc, key.substr(0, dot), key.substr(dot + 1), value);
    return;
  }
  std::string section;
  for (const auto &k : detail::known_keys()) {
    if (key == k.key) {
      if (!section.empty() && section != k.section)
        throw ConfigError("override key '" + key + "' is ambiguous");
      section = k.section;
    }
  }
  if (section.empty())
    throw ConfigError("unknown key '" + key + "'");
  set_key(rc, section, key, value);
}

//! Resolves a config path: as given if it exists, otherwise relative to
//! $CPFORCE_CONFIG_DIR.
inline std::filesystem::path resolve_config_path(const std::string &path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (fs::exists(p) || p.is_absolute())
    return p;
  if (const char *dir = std::getenv("CPFORCE_CONFIG_DIR")) {
    fs::path alt = fs::path(dir) / p;
    if (fs::exists(alt))
      return alt;
  }
  return p;
}

inline RunConfig parse_config_stream(std::istream &in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig rc;
  for (const auto &[section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside a section");
    for (const auto &[key, leaf] : body)
      set_key(rc, section, key, leaf.data());
  }
  return rc;
}

inline RunConfig load_config(const std::string &path) {
  const auto p = resolve_config_path(path);
  std::ifstream in(p);
  if (!in)
    throw ConfigError("cannot open config '" + p.string() + "'");
  return parse_config_stream(in);
}

} // namespace cpforce
