#ifndef QSTAT_SIM_HPP
#define QSTAT_SIM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstat/descriptive.hpp"
#include "qstat/dist.hpp"
#include "qstat/parallel.hpp"
#include "qstat/resample.hpp"
#include "qstat/rng.hpp"
#include "qstat/stat_tests.hpp"

namespace qstat {

struct CltExperimentConfig {
  DistSpec dist;
  std::size_t k = 5;
  std::size_t n = 25;
  std::size_t n_iter = 100000;
  RngSeed seed;
  std::size_t bins = 100;
};

// Sampling distribution of the ANOVA F statistic when all k groups are drawn
// from the same population. The reference overlay is F(k-1, kn-k).
inline EmpiricalDistribution clt_experiment(const CltExperimentConfig& cfg) {
  cfg.dist.validate();
  if (cfg.k < 2 || cfg.n < 2 || cfg.n_iter < 1)
    throw std::invalid_argument("clt_experiment: need k >= 2, n >= 2, n_iter >= 1");
  switch (cfg.dist.kind) {
    case DistKind::normal:
    case DistKind::uniform:
    case DistKind::exponential:
    case DistKind::beta:
      break;
    default:
      throw std::invalid_argument("clt_experiment: unsupported sampling distribution");
  }
  const std::size_t total = cfg.k * cfg.n;
  std::vector<std::size_t> sizes(cfg.k, cfg.n);
  std::vector<double> raw(cfg.n_iter);
  parallel_for(cfg.n_iter, [&](std::size_t i) {
    Rng rng(substream(cfg.seed, i));
    std::vector<double> pool(total);
    for (auto& v : pool) v = sample_one(cfg.dist, rng);
    raw[i] = detail::raw_f_anova(pool, sizes);
  });

  EmpiricalDistribution out;
  out.statistic_kind = StatKind::f_anova;
  out.n_iter = cfg.n_iter;
  out.seed = cfg.seed;
  out.reference = DistSpec::f(static_cast<double>(cfg.k - 1),
                              static_cast<double>(total - cfg.k));
  out.values.reserve(cfg.n_iter);
  for (double v : raw) {
    if (std::isnan(v))
      ++out.degenerate_count;
    else
      out.values.push_back(v);
  }
  if (!out.values.empty()) {
    out.ks_distance = ks_distance(out.values, out.reference);
    out.histogram = histogram(out.values, cfg.bins);
  }
  return out;
}

// Permutation sampling distribution for user-supplied data.
inline EmpiricalDistribution resample_experiment(const std::vector<GroupSample>& groups,
                                                 StatKind kind, std::size_t n_iter,
                                                 RngSeed seed, std::size_t bins = 100) {
  return permutation_null(groups, kind, n_iter, seed, bins);
}

struct TwoStepResult {
  double rate_direct = 0.0;           // pooled t applied unconditionally
  double rate_two_step = 0.0;         // normality gate, then t or permutation
  double rate_normality_reject = 0.0; // fraction routed to the permutation branch
  double jb_critical = 0.0;
  std::size_t n_iter = 0;
};

namespace detail {

// Monte Carlo JB critical value at the given sample size. The asymptotic
// chi-squared(2) cut-off is too inaccurate at n around 25.
inline double jb_critical_value(std::size_t n, double alpha, RngSeed seed,
                                std::size_t calib_iter = 10000) {
  std::vector<double> jb(calib_iter);
  const DistSpec norm = DistSpec::normal(0.0, 1.0);
  parallel_for(calib_iter, [&](std::size_t i) {
    Rng rng(substream(seed, i));
    GroupSample g;
    g.scores.resize(n);
    for (auto& v : g.scores) v = sample_one(norm, rng);
    jb[i] = jb_statistic(g);
  });
  std::sort(jb.begin(), jb.end());
  auto idx = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(calib_iter))) - 1;
  if (idx >= calib_iter) idx = calib_iter - 1;
  return jb[idx];
}

// Two-sided permutation t-test p-value, N re-deals.
inline double permutation_t_p(const std::vector<double>& pooled, std::size_t n1,
                              double observed, std::size_t n_perm, Rng& rng) {
  std::vector<double> perm(pooled);
  const double m = std::fabs(observed);
  std::size_t b = 0;
  for (std::size_t it = 0; it < n_perm; ++it) {
    for (std::size_t j = perm.size() - 1; j > 0; --j) {
      const std::size_t s = static_cast<std::size_t>(rng.bounded(j + 1));
      std::swap(perm[j], perm[s]);
    }
    const double t = raw_t_pooled({perm.data(), n1},
                                  {perm.data() + n1, perm.size() - n1});
    if (!std::isnan(t) && std::fabs(t) >= m) ++b;
  }
  return static_cast<double>(b + 1) / static_cast<double>(n_perm + 1);
}

}  // namespace detail

// Measures the Type-I error rate of testing the mean difference directly vs.
// gating the test on a per-group JB normality check (permutation fallback,
// N = 999). Both groups are drawn from the same population, so every
// rejection is a Type-I error.
inline TwoStepResult two_step_experiment(std::size_t n, const DistSpec& dist,
                                         double alpha, std::size_t n_iter,
                                         RngSeed seed) {
  dist.validate();
  if (n < 4 || n_iter < 1 || !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("two_step_experiment: invalid config");
  const double jb_crit =
      detail::jb_critical_value(n, alpha, substream(seed, 0x6a62637269740000ULL));

  std::vector<unsigned char> rej_direct(n_iter), rej_two_step(n_iter), routed(n_iter);
  parallel_for(n_iter, [&](std::size_t i) {
    Rng rng(substream(seed, i));
    GroupSample g1{"g1", std::vector<double>(n)};
    GroupSample g2{"g2", std::vector<double>(n)};
    for (auto& v : g1.scores) v = sample_one(dist, rng);
    for (auto& v : g2.scores) v = sample_one(dist, rng);
    const auto direct = t_test_pooled(g1, g2);
    rej_direct[i] = direct.p_value <= alpha ? 1 : 0;

    bool both_normal = false;
    const auto s1 = moments(g1);
    const auto s2 = moments(g2);
    if (s1.variance > 0.0 && s2.variance > 0.0)
      both_normal = jb_statistic(g1) <= jb_crit && jb_statistic(g2) <= jb_crit;
    if (both_normal) {
      routed[i] = 0;
      rej_two_step[i] = rej_direct[i];
    } else {
      routed[i] = 1;
      std::vector<double> pooled(g1.scores);
      pooled.insert(pooled.end(), g2.scores.begin(), g2.scores.end());
      const double p = detail::permutation_t_p(pooled, n, direct.statistic, 999, rng);
      rej_two_step[i] = p <= alpha ? 1 : 0;
    }
  });

  TwoStepResult r;
  r.jb_critical = jb_crit;
  r.n_iter = n_iter;
  const double nd = static_cast<double>(n_iter);
  for (std::size_t i = 0; i < n_iter; ++i) {
    r.rate_direct += rej_direct[i];
    r.rate_two_step += rej_two_step[i];
    r.rate_normality_reject += routed[i];
  }
  r.rate_direct /= nd;
  r.rate_two_step /= nd;
  r.rate_normality_reject /= nd;
  return r;
}

enum class TreatmentMode { systematic, heterogeneous };

inline const char* to_string(TreatmentMode m) {
  return m == TreatmentMode::systematic ? "systematic" : "heterogeneous";
}

struct TreatmentConfig {
  double mu_org = 0.0;                // baseline MOS
  std::vector<double> effects;        // per-condition treatment effect
  double noise_sigma = 0.5;           // per-subject random error spread
  TreatmentMode mode = TreatmentMode::systematic;
  double hetero_sigma = 0.0;          // per-subject effect spread (heterogeneous)
  std::size_t n_subjects = 0;
  RngSeed seed;
};

// Synthetic opinion-score generator. Systematic mode reuses the same subject
// error across conditions, so treatments shift location only; heterogeneous
// mode adds an independent per-subject perturbation in each condition.
inline std::vector<GroupSample> generate_treatment_groups(const TreatmentConfig& cfg) {
  if (cfg.effects.empty() || cfg.n_subjects < 1 || !(cfg.noise_sigma > 0.0) ||
      cfg.hetero_sigma < 0.0)
    throw std::invalid_argument("generate_treatment_groups: invalid config");
  Rng rng(cfg.seed);
  std::vector<double> eps(cfg.n_subjects);
  for (auto& e : eps) e = cfg.noise_sigma * rng.normal();
  std::vector<GroupSample> groups;
  groups.reserve(cfg.effects.size());
  for (std::size_t c = 0; c < cfg.effects.size(); ++c) {
    GroupSample g;
    g.id = "c" + std::to_string(c + 1);
    g.scores.resize(cfg.n_subjects);
    for (std::size_t i = 0; i < cfg.n_subjects; ++i) {
      double v = cfg.mu_org + cfg.effects[c] + eps[i];
      if (cfg.mode == TreatmentMode::heterogeneous)
        v += cfg.hetero_sigma * rng.normal();
      g.scores[i] = v;
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace qstat

#endif  // QSTAT_SIM_HPP
