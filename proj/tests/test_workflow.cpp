#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "qstat/rng.hpp"
#include "qstat/workflow.hpp"

using qstat::ChosenMethod;
using qstat::GroupSample;

namespace {

GroupSample noisy_group(const char* id, std::size_t n, qstat::RngSeed seed,
                        double mu = 0.0, double sigma = 1.0) {
  qstat::Rng rng(seed);
  GroupSample g{id, {}};
  for (std::size_t i = 0; i < n; ++i) g.scores.push_back(mu + sigma * rng.normal());
  return g;
}

}  // namespace

TEST_CASE("variance homogeneity rule on equal variances") {
  const GroupSample a{"a", {1.0, 2.0, 3.0}};
  const GroupSample b{"b", {5.0, 6.0, 7.0}};
  const auto vc = qstat::variance_homogeneity_check({a, b}, 0.25);
  CHECK(vc.ratio == doctest::Approx(1.0));
  CHECK_FALSE(vc.heterogeneous);
}

TEST_CASE("variance homogeneity rule on the published three-group variances") {
  const auto groups = fixtures::published_summary_groups();
  const auto vc = qstat::variance_homogeneity_check(groups, 0.25);
  CHECK(vc.ratio == doctest::Approx(0.7490).epsilon(1e-3));
  CHECK_FALSE(vc.heterogeneous);
}

TEST_CASE("variance ratio 0.2 trips the default threshold") {
  const auto a = noisy_group("a", 30, {1, 0}, 0.0, 1.0);
  GroupSample b = a;
  b.id = "b";
  for (auto& x : b.scores) x *= std::sqrt(5.0);
  const auto vc = qstat::variance_homogeneity_check({a, b}, 0.25);
  CHECK(vc.ratio == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(vc.heterogeneous);
  REQUIRE(vc.offending_groups.size() >= 1);
}

TEST_CASE("variance check errors") {
  const GroupSample c{"c", {2.0, 2.0, 2.0}};
  CHECK_THROWS_AS(qstat::variance_homogeneity_check({c, c}, 0.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(qstat::variance_homogeneity_check({c}, 0.25), std::invalid_argument);
}

TEST_CASE("balanced check") {
  const auto groups = fixtures::published_summary_groups();
  CHECK(qstat::balanced_check(groups));
  const GroupSample small{"s", {1.0, 2.0}};
  CHECK_FALSE(qstat::balanced_check({groups[0], small}));
  CHECK(qstat::balanced_check({small, small}));
}

TEST_CASE("recommend picks plain ANOVA for the published-style data") {
  const auto groups = fixtures::published_summary_groups();
  qstat::WorkflowConfig cfg;
  const auto report = qstat::recommend(groups, cfg);
  CHECK(report.chosen_method == ChosenMethod::anova_oneway);
  CHECK_FALSE(report.heterogeneous_flag);
  CHECK(report.balanced_flag);
  CHECK(report.warnings.empty());
  REQUIRE(report.parametric.has_value());
  CHECK(report.parametric->statistic == doctest::Approx(9.177).epsilon(1e-3));
  CHECK_FALSE(report.permutation_p.has_value());
}

TEST_CASE("recommend routes to a permutation test when the mean is inadequate") {
  const auto g1 = noisy_group("a", 12, {11, 0});
  const auto g2 = noisy_group("b", 12, {12, 0}, 0.5);
  qstat::WorkflowConfig cfg;
  cfg.mean_adequate = false;
  cfg.permutation_iters = 999;
  cfg.seed = {4, 0};
  const auto report = qstat::recommend({g1, g2}, cfg);
  CHECK(report.chosen_method == ChosenMethod::permutation);
  REQUIRE(report.permutation_p.has_value());
  CHECK(*report.permutation_p > 0.0);
  CHECK(*report.permutation_p <= 1.0);
}

TEST_CASE("heterogeneous unbalanced data reports both routes and warns") {
  const auto a = noisy_group("a", 20, {21, 0}, 0.0, 1.0);
  const auto b = noisy_group("b", 30, {22, 0}, 0.0, std::sqrt(5.0));
  // force the exact variance ratio by rescaling b to 5x the variance of a
  qstat::WorkflowConfig cfg;
  cfg.permutation_iters = 999;
  cfg.seed = {8, 0};
  auto groups = std::vector<GroupSample>{a, b};
  const double va = qstat::moments(a).variance;
  const double vb = qstat::moments(b).variance;
  const double target = std::sqrt(5.0 * va / vb);
  const double mb = qstat::moments(b).mean;
  for (auto& x : groups[1].scores) x = mb + (x - mb) * target;
  const auto report = qstat::recommend(groups, cfg);
  CHECK(report.heterogeneous_flag);
  CHECK_FALSE(report.balanced_flag);
  CHECK_FALSE(report.warnings.empty());
  CHECK(report.parametric.has_value());
  CHECK(report.permutation_p.has_value());
  CHECK(report.chosen_method == ChosenMethod::t_pooled);
}

TEST_CASE("heterogeneous balanced data warns but stays parametric") {
  const auto a = noisy_group("a", 25, {31, 0}, 0.0, 1.0);
  auto b = a;
  b.id = "b";
  for (auto& x : b.scores) x *= 3.0;
  const auto report = qstat::recommend({a, b}, qstat::WorkflowConfig{});
  CHECK(report.heterogeneous_flag);
  CHECK(report.balanced_flag);
  CHECK_FALSE(report.warnings.empty());
  CHECK(report.parametric.has_value());
  CHECK_FALSE(report.permutation_p.has_value());
}

TEST_CASE("recommend's p-value equals the direct test for well-behaved groups") {
  const auto g1 = noisy_group("a", 15, {41, 0});
  const auto g2 = noisy_group("b", 15, {42, 0}, 0.3);
  const auto direct = qstat::t_test_pooled(g1, g2);
  const auto report = qstat::recommend({g1, g2}, qstat::WorkflowConfig{});
  REQUIRE(report.parametric.has_value());
  CHECK(report.parametric->p_value == direct.p_value);
  CHECK(report.parametric->statistic == direct.statistic);
}

TEST_CASE("heterogeneous flag is monotone in the threshold") {
  const auto groups = fixtures::published_summary_groups();
  bool prev = false;
  for (double thr = 0.05; thr < 1.0; thr += 0.05) {
    const bool flag = qstat::variance_homogeneity_check(groups, thr).heterogeneous;
    CHECK((flag || !prev));  // once on, raising the threshold keeps it on
    prev = flag;
  }
}
