#include "cpforce/validation.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cpforce;

namespace {

std::set<std::string> failing(const std::vector<Check> &checks) {
  std::set<std::string> out;
  for (const auto &c : checks)
    if (!c.passed)
      out.insert(c.id);
  return out;
}

} // namespace

TEST(Validation, PerturbedFarLawIsCaughtExactlyWhereUsed) {
  ValidationOptions base;
  base.only = {"1", "2", "A"};
  const auto clean = run_validation(base);
  ASSERT_TRUE(failing(clean).empty());

  ValidationOptions bad = base;
  bad.coefficients.far *= 1.5;
  const auto perturbed = run_validation(bad);
  ASSERT_EQ(perturbed.size(), clean.size());
  std::set<std::string> users;
  for (const auto &c : perturbed)
    if (c.uses.count("far"))
      users.insert(c.id);
  EXPECT_FALSE(users.empty());
  EXPECT_EQ(failing(perturbed), users);
}

TEST(Validation, PerturbedNearLawIsCaughtExactlyWhereUsed) {
  ValidationOptions opt;
  opt.only = {"1", "2", "A"};
  opt.coefficients.near *= 0.9;
  const auto checks = run_validation(opt);
  std::set<std::string> users;
  for (const auto &c : checks)
    if (c.uses.count("near"))
      users.insert(c.id);
  EXPECT_EQ(failing(checks), users);
}

TEST(Validation, LooseQuadratureStillMeetsCoefficientChecks) {
  ValidationOptions opt;
  opt.only = {"1a", "2a"};
  opt.quadrature.tolerance = 1e-2;
  const auto checks = run_validation(opt);
  ASSERT_EQ(checks.size(), 5u);
  EXPECT_TRUE(all_passed(checks));
}

TEST(Validation, OnlyFilterSelectsByPrefix) {
  ValidationOptions opt;
  opt.only = {"A5"};
  const auto checks = run_validation(opt);
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_EQ(checks[0].id, "A5");
  EXPECT_TRUE(checks[0].passed);
}

TEST(Validation, EquivalenceGridCoversScenarios) {
  const auto grid = equivalence_grid();
  ASSERT_EQ(grid.size(), 20u);
  std::set<Scenario> seen;
  for (const auto &c : grid) {
    EXPECT_FALSE(has_errors(validate_config(c)));
    seen.insert(c.scenario);
  }
  EXPECT_EQ(seen.size(), 3u);
}
