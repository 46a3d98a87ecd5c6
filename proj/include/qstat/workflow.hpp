#ifndef QSTAT_WORKFLOW_HPP
#define QSTAT_WORKFLOW_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstat/descriptive.hpp"
#include "qstat/resample.hpp"
#include "qstat/stat_tests.hpp"

namespace qstat {

struct VarianceCheck {
  double ratio = 1.0;            // min group variance / max group variance
  bool heterogeneous = false;    // ratio < threshold
  std::vector<std::string> offending_groups;
};

// Empirical variance-homogeneity rule: flag when the min/max group variance
// ratio drops below the threshold (default 0.25, i.e. max/min > 4).
inline VarianceCheck variance_homogeneity_check(const std::vector<GroupSample>& groups,
                                                double threshold) {
  if (groups.size() < 2)
    throw std::invalid_argument("variance_homogeneity_check: need >= 2 groups");
  std::vector<double> vars;
  vars.reserve(groups.size());
  for (const auto& g : groups) {
    if (g.scores.size() < 2)
      throw std::invalid_argument("variance_homogeneity_check: each group needs n >= 2");
    vars.push_back(moments(g).variance);
  }
  const double vmax = *std::max_element(vars.begin(), vars.end());
  if (vmax == 0.0)
    throw std::invalid_argument("variance_homogeneity_check: all groups constant");
  const double vmin = *std::min_element(vars.begin(), vars.end());
  VarianceCheck vc;
  vc.ratio = vmin / vmax;
  vc.heterogeneous = vc.ratio < threshold;
  // groups whose variance differs from the median variance by the largest factor
  std::vector<double> sorted(vars);
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.size() % 2 == 1
                            ? sorted[sorted.size() / 2]
                            : 0.5 * (sorted[sorted.size() / 2 - 1] +
                                     sorted[sorted.size() / 2]);
  double worst = 0.0;
  std::vector<double> factors(vars.size(), 0.0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    double f;
    if (vars[i] == 0.0 || median == 0.0)
      f = std::numeric_limits<double>::infinity();
    else
      f = std::max(vars[i] / median, median / vars[i]);
    factors[i] = f;
    worst = std::max(worst, f);
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (factors[i] >= worst * (1.0 - 1e-12)) vc.offending_groups.push_back(groups[i].id);
  return vc;
}

inline bool balanced_check(const std::vector<GroupSample>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("balanced_check: need >= 2 groups");
  const std::size_t n0 = groups.front().scores.size();
  for (const auto& g : groups)
    if (g.scores.size() != n0) return false;
  return true;
}

enum class ChosenMethod { t_pooled, anova_oneway, permutation };

inline const char* to_string(ChosenMethod m) {
  switch (m) {
    case ChosenMethod::t_pooled: return "t_pooled";
    case ChosenMethod::anova_oneway: return "anova_oneway";
    case ChosenMethod::permutation: return "permutation";
  }
  return "?";
}

struct WorkflowConfig {
  double alpha = 0.05;
  double variance_ratio_threshold = 0.25;
  bool mean_adequate = true;  // caller-asserted; the tool cannot decide this
  std::size_t permutation_iters = 100000;
  RngSeed seed;
};

struct DecisionReport {
  std::vector<std::string> group_ids;
  std::vector<SummaryStats> groups_summary;
  double variance_ratio = 1.0;
  bool heterogeneous_flag = false;
  bool balanced_flag = true;
  bool mean_adequate_flag = true;
  ChosenMethod chosen_method = ChosenMethod::t_pooled;
  std::optional<TestResult> parametric;     // present unless purely nonparametric
  std::optional<double> observed_statistic; // statistic the permutation p refers to
  std::optional<double> permutation_p;
  std::optional<std::size_t> permutation_degenerate_count;
  std::vector<std::string> offending_groups;
  std::vector<std::string> warnings;
  std::vector<std::string> rationale;
};

namespace detail {

inline TestResult parametric_result(const std::vector<GroupSample>& groups) {
  if (groups.size() == 2) return t_test_pooled(groups[0], groups[1]);
  return anova_oneway(groups);
}

inline void attach_permutation(DecisionReport& report,
                               const std::vector<GroupSample>& groups,
                               const TestResult& observed,
                               const WorkflowConfig& cfg) {
  const StatKind kind =
      groups.size() == 2 ? StatKind::t_pooled : StatKind::f_anova;
  const auto dist = permutation_null(groups, kind, cfg.permutation_iters, cfg.seed);
  const Tail tail = kind == StatKind::t_pooled ? Tail::two_sided : Tail::right;
  report.observed_statistic = observed.statistic;
  report.permutation_p = permutation_p_value(observed.statistic, dist, tail);
  report.permutation_degenerate_count = dist.degenerate_count;
}

}  // namespace detail

// The recommended decision procedure. Never applies a normality test: the
// choice hinges on whether the mean is an adequate summary (caller-asserted)
// and on the empirical variance rule plus the balanced-design check.
inline DecisionReport recommend(const std::vector<GroupSample>& groups,
                                const WorkflowConfig& cfg) {
  if (groups.size() < 2) throw std::invalid_argument("recommend: need >= 2 groups");
  DecisionReport report;
  report.mean_adequate_flag = cfg.mean_adequate;
  for (const auto& g : groups) {
    report.group_ids.push_back(g.id);
    report.groups_summary.push_back(moments(g));
  }

  const auto observed = detail::parametric_result(groups);

  if (!cfg.mean_adequate) {
    report.chosen_method = ChosenMethod::permutation;
    report.rationale.push_back(
        "mean flagged as not an adequate summary of the scores; using a "
        "permutation test of the " +
        std::string(groups.size() == 2 ? "t" : "F") + " statistic");
    detail::attach_permutation(report, groups, observed, cfg);
    return report;
  }

  const auto vc = variance_homogeneity_check(groups, cfg.variance_ratio_threshold);
  report.variance_ratio = vc.ratio;
  report.heterogeneous_flag = vc.heterogeneous;
  report.offending_groups = vc.offending_groups;
  report.balanced_flag = balanced_check(groups);
  report.rationale.push_back(
      "variance ratio (min/max) = " + std::to_string(vc.ratio) + ", threshold " +
      std::to_string(cfg.variance_ratio_threshold));

  report.chosen_method = groups.size() == 2 ? ChosenMethod::t_pooled
                                            : ChosenMethod::anova_oneway;
  report.parametric = observed;

  if (vc.heterogeneous && report.balanced_flag) {
    report.warnings.push_back(
        "group variances differ strongly (ratio below threshold); pooled tests "
        "remain valid because the design is balanced, but the affected "
        "conditions should be revisited");
    report.rationale.push_back(
        "heterogeneous variances with a balanced design: proceeding with the "
        "parametric test");
  } else if (vc.heterogeneous && !report.balanced_flag) {
    report.warnings.push_back(
        "group variances differ strongly and the design is unbalanced; the "
        "samples are likely to be drawn from different populations -- both the "
        "parametric and a permutation result are reported");
    report.rationale.push_back(
        "heterogeneous variances with an unbalanced design: reporting the "
        "parametric result alongside a permutation result");
    detail::attach_permutation(report, groups, observed, cfg);
  } else {
    report.rationale.push_back(
        "variances similar: using the " +
        std::string(groups.size() == 2 ? "pooled t-test" : "one-way ANOVA") +
        " directly; no normality check is performed or needed");
  }
  return report;
}

}  // namespace qstat

#endif  // QSTAT_WORKFLOW_HPP
