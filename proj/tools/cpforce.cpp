// cpforce: command-line front end for the Casimir-Polder energy library.
//
//   cpforce energy    --config run.ini [--set key=value ...]
//   cpforce sweep     --config sweep.ini --out rows.csv [--format json] [--jobs N]
//   cpforce crossover --config crossover.ini --out scan.csv
//   cpforce validate  [--tolerance X]
#include "cpforce/cpforce.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cpforce;

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  double tolerance = 0.0;
  double lambda = 0.0;
};

RunConfig build_config(const Options &o) {
  RunConfig rc;
  if (!o.config.empty())
    rc = load_config(o.config);
  for (const auto &s : o.overrides)
    apply_override(rc, s);
  if (o.lambda > 0.0)
    rc.physical.coupling = o.lambda;
  if (o.tolerance > 0.0)
    rc.quadrature.tolerance = o.tolerance;
  validate(rc.quadrature);
  return rc;
}

//! Prints every violation; returns false if any is an error.
bool report_violations(const PhysicalConfig &c) {
  bool ok = true;
  for (const auto &v : validate_config(c)) {
    std::cerr << (v.is_error() ? "error: " : "warning: ") << v.field << ": "
              << v.message << '\n';
    ok = ok && !v.is_error();
  }
  return ok;
}

// The sink is either the --out file or stdout.
template <class Write> void emit(const Options &o, Write write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(o.out);
  if (!f)
    throw ConfigError("cannot write '" + o.out + "'");
  write(f);
}

int cmd_energy(const Options &o) {
  const RunConfig rc = build_config(o);
  if (!report_violations(rc.physical))
    return static_cast<int>(ExitCode::Config);
  const auto r = energy_vf(rc.physical, rc.quadrature);
  nlohmann::json j = {
      {"value", r.value},
      {"error", r.error},
      {"method", std::string(to_string(r.method))},
      {"regime", std::string(to_string(r.regime))},
      {"convention", r.convention},
      {"physical", detail::physical_json(rc.physical)},
      {"diagnostics",
       {{"panels", r.diagnostics.panels},
        {"extrapolation_residual", r.diagnostics.extrapolation_residual},
        {"principal_part", r.diagnostics.principal_part},
        {"resonant_part", r.diagnostics.resonant_part},
        {"imaginary_residual", r.diagnostics.imaginary_residual}}}};
  emit(o, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
  return 0;
}

int cmd_sweep(const Options &o) {
  const RunConfig rc = build_config(o);
  const auto r = run_sweep(rc, o.jobs);
  emit(o, [&](std::ostream &os) {
    if (o.format == "json")
      os << sweep_json(r).dump(2) << '\n';
    else
      write_csv(os, r);
  });
  for (const auto &row : r.rows)
    if (row.error_code != 0)
      std::cerr << "point " << format17(row.value) << ": error:"
                << row.error_code << " " << row.error << '\n';
  if (exceeds_failure_quota(r)) {
    std::cerr << r.failures << " of " << r.rows.size()
              << " points failed (quota 10%)\n";
    return static_cast<int>(ExitCode::SweepQuota);
  }
  return 0;
}

int cmd_crossover(const Options &o) {
  const RunConfig rc = build_config(o);
  const auto r = run_crossover(rc, o.jobs);
  emit(o, [&](std::ostream &os) {
    if (o.format == "json")
      os << crossover_json(r).dump(2) << '\n';
    else
      write_csv(os, r);
  });
  std::cerr << "z* = " << format17(r.z_star) << "  z* a = "
            << format17(r.z_star_a) << "  (threshold " << r.threshold
            << ")\n"
            << "short-distance |ratio - 1|/(az)^2 = "
            << format17(r.short_distance_band) << '\n'
            << "long-distance ratio (az)^2/2 = "
            << format17(r.long_distance_scaled)
            << (r.long_distance_ok ? "  [within 5% of 1]"
                                   : "  [NOT within 5% of 1]")
            << '\n';
  return 0;
}

int cmd_validate(const Options &o) {
  ValidationOptions v;
  if (o.tolerance > 0.0)
    v.quadrature.tolerance = o.tolerance;
  validate(v.quadrature);
  const auto checks = run_validation(v);
  std::printf("%-6s %-6s %-58s %-13s %-13s %-10s\n", "result", "id", "check",
              "expected", "actual", "tolerance");
  int failed = 0;
  for (const auto &c : checks) {
    failed += !c.passed;
    std::printf("%-6s %-6s %-58s %-13.6g %-13.6g %-10.3g %s\n",
                c.passed ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                c.expected, c.actual, c.tolerance, c.note.c_str());
  }
  std::printf("%d of %zu checks failed\n", failed, checks.size());
  return failed ? static_cast<int>(ExitCode::ValidationFailure) : 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Casimir-Polder interaction energy of two two-level atoms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cpforce::version));
  Options o;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", o.config, "INI configuration file");
    sub->add_option("--set", o.overrides,
                    "override, key=value or section.key=value (repeatable)");
    sub->add_option("--tolerance", o.tolerance, "relative quadrature tolerance");
    sub->add_option("--lambda", o.lambda, "coupling (alias for --set coupling=)");
  };
  auto add_output = [&](CLI::App *sub) {
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", o.jobs, "concurrent evaluations")
        ->check(CLI::PositiveNumber);
  };

  auto *energy = app.add_subcommand("energy", "single-point energy");
  add_common(energy);
  energy->add_option("--out", o.out, "output file (default stdout)");

  auto *sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep);
  add_output(sweep);

  auto *cross = app.add_subcommand("crossover",
                                   "accelerated vs Unruh-thermal scan");
  add_common(cross);
  add_output(cross);

  auto *val = app.add_subcommand("validate", "acceptance and invariant suite");
  val->add_option("--tolerance", o.tolerance, "relative quadrature tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(cpforce::ExitCode::Config);
  }

  try {
    if (*energy)
      return cmd_energy(o);
    if (*sweep)
      return cmd_sweep(o);
    if (*cross)
      return cmd_crossover(o);
    return cmd_validate(o);
  } catch (const cpforce::AccuracyError &e) {
    std::cerr << "accuracy error: " << e.what()
              << " (residual " << cpforce::format17(e.residual()) << ")\n";
    return static_cast<int>(cpforce::ExitCode::Accuracy);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(cpforce::exit_code_for(e));
  }
}
