#include "cpforce/core.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace cpforce;

namespace {

PhysicalConfig cfg(double a, double t, Scenario s) {
  PhysicalConfig c;
  c.acceleration = a;
  c.temperature = t;
  c.scenario = s;
  return c;
}

bool mentions(const std::vector<Violation> &v, const std::string &field,
              Violation::Severity sev) {
  for (const auto &x : v)
    if (x.field == field && x.severity == sev)
      return true;
  return false;
}

} // namespace

TEST(ValidateConfig, DefaultStaticConfigIsClean) {
  EXPECT_TRUE(validate_config(cfg(0, 0, Scenario::StaticVacuum)).empty());
}

TEST(ValidateConfig, AcceleratedWithTemperatureIsRejected) {
  const auto v = validate_config(cfg(0.01, 0.01, Scenario::Accelerated));
  EXPECT_TRUE(has_errors(v));
  EXPECT_TRUE(mentions(v, "temperature", Violation::Severity::Error));
  EXPECT_THROW(require_valid(cfg(0.01, 0.01, Scenario::Accelerated)),
               UnsupportedScenario);
}

TEST(ValidateConfig, LargeAccelerationOnlyWarns) {
  const auto v = validate_config(cfg(2.0, 0, Scenario::Accelerated));
  EXPECT_FALSE(has_errors(v));
  EXPECT_TRUE(mentions(v, "acceleration", Violation::Severity::Warning));
  EXPECT_NO_THROW(require_valid(cfg(2.0, 0, Scenario::Accelerated)));
}

TEST(ValidateConfig, NonPositiveParametersAreErrors) {
  PhysicalConfig c;
  c.gap = 0.0;
  c.separation = -1.0;
  c.coupling = std::nan("");
  const auto v = validate_config(c);
  EXPECT_TRUE(mentions(v, "gap", Violation::Severity::Error));
  EXPECT_TRUE(mentions(v, "separation", Violation::Severity::Error));
  EXPECT_TRUE(mentions(v, "coupling", Violation::Severity::Error));
  EXPECT_THROW(require_valid(c), ConfigError);
}

TEST(ValidateConfig, ScenarioTagMustMatchParameters) {
  EXPECT_TRUE(has_errors(validate_config(cfg(0.1, 0, Scenario::StaticVacuum))));
  EXPECT_TRUE(has_errors(validate_config(cfg(0.1, 0, Scenario::Thermal))));
  EXPECT_FALSE(has_errors(validate_config(cfg(0, 0.01, Scenario::Thermal))));
}

TEST(ClassifyRegime, ReferenceLabels) {
  EXPECT_EQ(classify_regime({0.01, 0, 0, 0, 0}), Regime::NearZone);
  EXPECT_EQ(classify_regime({100, 100, 0, 1e-3, 0}),
            Regime::AcceleratedNonThermal);
  EXPECT_EQ(classify_regime({1, 1, 0, 1, 0}), Regime::Crossover);
  EXPECT_EQ(classify_regime({100, 0, 0, 0, 0}), Regime::FarZone);
  EXPECT_EQ(classify_regime({1e4, 0, 1e-3, 0, 10.5}),
            Regime::ThermalClassical);
}

TEST(ClassifyRegime, BadThresholdsThrow) {
  EXPECT_THROW(classify_regime({1, 0, 0, 0, 0}, {10.0, 1.0}), ConfigError);
  EXPECT_THROW(classify_regime({1, 0, 0, 0, 0}, {0.0, 1.0}), ConfigError);
}

TEST(ClassifyRegime, ScalingClosure) {
  for (double s : {0.5, 2.0, 10.0, 1e3}) {
    for (const auto &c0 : {cfg(0, 0, Scenario::StaticVacuum),
                           cfg(1e-3, 0, Scenario::Accelerated),
                           cfg(0, 1e-3, Scenario::Thermal)}) {
      for (double z : {1e-3, 0.5, 20.0, 1e5}) {
        PhysicalConfig c = c0;
        c.separation = z;
        PhysicalConfig cs = c;
        cs.gap *= s;
        cs.acceleration *= s;
        cs.temperature *= s;
        cs.separation /= s;
        const auto g = groups(c), gs = groups(cs);
        EXPECT_NEAR(g.omega_z, gs.omega_z, 1e-12 * g.omega_z);
        EXPECT_NEAR(g.a_z, gs.a_z, 1e-12 * g.a_z + 1e-300);
        EXPECT_NEAR(g.t_z, gs.t_z, 1e-12 * g.t_z + 1e-300);
        EXPECT_EQ(classify_regime(g), classify_regime(gs));
      }
    }
  }
}

TEST(Scenario, ParseRoundTrip) {
  for (auto s : {Scenario::StaticVacuum, Scenario::Thermal,
                 Scenario::Accelerated})
    EXPECT_EQ(parse_scenario(to_string(s)), s);
  EXPECT_THROW(parse_scenario("rindler"), ConfigError);
}

TEST(ExitCodes, ExceptionMapping) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), ExitCode::Config);
  EXPECT_EQ(exit_code_for(UnsupportedScenario("x")), ExitCode::Config);
  EXPECT_EQ(exit_code_for(DomainError("x")), ExitCode::Config);
  EXPECT_EQ(exit_code_for(AccuracyError("x", 1.0)), ExitCode::Accuracy);
  EXPECT_EQ(exit_code_for(ConsistencyError("x")), ExitCode::Accuracy);
  EXPECT_EQ(exit_code_for(RangeError("x")), ExitCode::Range);
}

TEST(Format, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -6.2989e-18, 1e300, 5e-324}) {
    EXPECT_EQ(std::strtod(format17(v).c_str(), nullptr), v);
  }
}
