#ifndef QSTAT_JSON_IO_HPP
#define QSTAT_JSON_IO_HPP

#include <cmath>
#include <string>

#include "json.hpp"
#include "qstat/descriptive.hpp"
#include "qstat/dist.hpp"
#include "qstat/resample.hpp"
#include "qstat/sim.hpp"
#include "qstat/stat_tests.hpp"
#include "qstat/workflow.hpp"

namespace qstat {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// JSON has no infinity; degenerate statistics serialize as signed sentinels.
inline ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline ordered_json to_json(const RngSeed& seed) {
  return {{"master_seed", seed.master_seed}, {"stream_index", seed.stream_index}};
}

inline ordered_json to_json(const DistSpec& spec) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  return {{"kind", to_string(spec.kind)}, {"params", params}};
}

inline ordered_json to_json(const SummaryStats& s) {
  return {{"n", s.n},
          {"mean", s.mean},
          {"variance", s.variance},
          {"sos", s.sos},
          {"skewness", json_number(s.skewness)},
          {"kurtosis", json_number(s.kurtosis)}};
}

inline ordered_json to_json(const TestResult& r) {
  ordered_json j;
  j["method"] = to_string(r.method);
  j["statistic"] = json_number(r.statistic);
  if (r.df2)
    j["df"] = {r.df, *r.df2};
  else
    j["df"] = r.df;
  j["p_value"] = r.p_value;
  j["tail"] = to_string(r.tail);
  j["degenerate"] = r.degenerate;
  ordered_json extras = ordered_json::object();
  for (const auto& [k, v] : r.extras) extras[k] = json_number(v);
  j["extras"] = extras;
  return j;
}

// Summary view: the raw statistic values go to the histogram CSV, not JSON.
inline ordered_json to_json(const EmpiricalDistribution& d) {
  double mean = 0.0;
  for (double v : d.values) mean += v;
  if (!d.values.empty()) mean /= static_cast<double>(d.values.size());
  ordered_json j;
  j["statistic_kind"] = to_string(d.statistic_kind);
  j["n_iter"] = d.n_iter;
  j["degenerate_count"] = d.degenerate_count;
  j["values_mean"] = mean;
  j["ks_distance"] = d.ks_distance;
  j["reference"] = to_json(d.reference);
  j["seed"] = to_json(d.seed);
  return j;
}

inline ordered_json to_json(const TwoStepResult& r) {
  return {{"rate_direct", r.rate_direct},
          {"rate_two_step", r.rate_two_step},
          {"rate_normality_reject", r.rate_normality_reject},
          {"jb_critical", r.jb_critical},
          {"n_iter", r.n_iter}};
}

inline ordered_json to_json(const DecisionReport& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json groups = ordered_json::array();
  for (std::size_t i = 0; i < r.groups_summary.size(); ++i) {
    ordered_json g = to_json(r.groups_summary[i]);
    g["id"] = r.group_ids[i];
    groups.push_back(g);
  }
  j["groups_summary"] = groups;
  j["variance_ratio"] = r.variance_ratio;
  j["heterogeneous_flag"] = r.heterogeneous_flag;
  j["balanced_flag"] = r.balanced_flag;
  j["mean_adequate_flag"] = r.mean_adequate_flag;
  j["chosen_method"] = to_string(r.chosen_method);
  j["parametric"] = r.parametric ? to_json(*r.parametric) : ordered_json(nullptr);
  j["observed_statistic"] =
      r.observed_statistic ? json_number(*r.observed_statistic) : ordered_json(nullptr);
  j["permutation_p"] = r.permutation_p ? ordered_json(*r.permutation_p)
                                       : ordered_json(nullptr);
  j["permutation_degenerate_count"] =
      r.permutation_degenerate_count ? ordered_json(*r.permutation_degenerate_count)
                                     : ordered_json(nullptr);
  j["offending_groups"] = r.offending_groups;
  j["warnings"] = r.warnings;
  j["rationale"] = r.rationale;
  return j;
}

}  // namespace qstat

#endif  // QSTAT_JSON_IO_HPP
