#ifndef QSTAT_RESAMPLE_HPP
#define QSTAT_RESAMPLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstat/descriptive.hpp"
#include "qstat/dist.hpp"
#include "qstat/parallel.hpp"
#include "qstat/rng.hpp"
#include "qstat/stat_tests.hpp"

namespace qstat {

enum class StatKind { t_pooled, f_anova };

inline const char* to_string(StatKind k) {
  return k == StatKind::t_pooled ? "t_pooled" : "f_anova";
}

struct HistogramData {
  std::vector<double> bin_edges;  // length B+1, sorted
  std::vector<double> densities;  // length B, integrates to 1
};

struct EmpiricalDistribution {
  std::vector<double> values;  // non-degenerate statistic values, iteration order
  StatKind statistic_kind;
  DistSpec reference;
  double ks_distance = 0.0;
  HistogramData histogram;
  std::size_t n_iter = 0;
  std::size_t degenerate_count = 0;
  RngSeed seed;
};

// sup |empirical CDF - reference CDF|
inline double ks_distance(const std::vector<double>& values, const DistSpec& reference) {
  if (values.empty()) throw std::invalid_argument("ks_distance: empty input");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double c = cdf(reference, sorted[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - c;
    const double lo = c - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

inline HistogramData histogram(const std::vector<double>& values, std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("histogram: empty input");
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double lo = *mn_it, hi = *mx_it;
  if (lo == hi) {  // point mass: give it a unit-width support
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  HistogramData h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges.back() = hi;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - lo) / width);
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
  }
  h.densities.resize(bins);
  const double norm = static_cast<double>(values.size()) * width;
  for (std::size_t i = 0; i < bins; ++i)
    h.densities[i] = static_cast<double>(counts[i]) / norm;
  return h;
}

inline void write_histogram_csv(const HistogramData& h, std::ostream& os) {
  os << "bin_left,bin_right,density\n";
  char buf[128];
  for (std::size_t i = 0; i < h.densities.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", h.bin_edges[i],
                  h.bin_edges[i + 1], h.densities[i]);
    os << buf;
  }
}

namespace detail {

// Pooled-t statistic over two contiguous slices; NaN when degenerate.
inline double raw_t_pooled(std::span<const double> a, std::span<const double> b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double ma = 0.0, mb = 0.0;
  for (double x : a) ma += x;
  for (double x : b) mb += x;
  ma /= na;
  mb /= nb;
  double ssa = 0.0, ssb = 0.0;
  for (double x : a) ssa += (x - ma) * (x - ma);
  for (double x : b) ssb += (x - mb) * (x - mb);
  const double sp2 = (ssa + ssb) / (na + nb - 2.0);
  if (sp2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
}

// One-way ANOVA F over contiguous slices; NaN when SS_W = 0.
inline double raw_f_anova(std::span<const double> pool,
                          std::span<const std::size_t> sizes) {
  const double total = static_cast<double>(pool.size());
  double gsum = 0.0;
  for (double x : pool) gsum += x;
  const double gm = gsum / total;
  double ss_b = 0.0, ss_w = 0.0;
  std::size_t off = 0;
  for (std::size_t gi = 0; gi < sizes.size(); ++gi) {
    const std::size_t n = sizes[gi];
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m += pool[off + j];
    m /= static_cast<double>(n);
    const double d = m - gm;
    ss_b += static_cast<double>(n) * d * d;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = pool[off + j] - m;
      ss_w += e * e;
    }
    off += n;
  }
  if (ss_w == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double k = static_cast<double>(sizes.size());
  return (ss_b / (k - 1.0)) / (ss_w / (total - k));
}

}  // namespace detail

// Builds the empirical null distribution of a statistic by re-dealing the
// pooled observations into groups of the original sizes, n_iter times.
// Each iteration draws from its own RNG substream, so the result is
// bit-identical regardless of thread count.
inline EmpiricalDistribution permutation_null(const std::vector<GroupSample>& groups,
                                              StatKind kind, std::size_t n_iter,
                                              RngSeed seed, std::size_t bins = 100) {
  if (n_iter < 1) throw std::invalid_argument("permutation_null: n_iter must be >= 1");
  if (kind == StatKind::t_pooled && groups.size() != 2)
    throw std::invalid_argument("permutation_null: t_pooled requires exactly 2 groups");
  if (groups.size() < 2)
    throw std::invalid_argument("permutation_null: need >= 2 groups");
  std::vector<double> pool;
  std::vector<std::size_t> sizes;
  for (const auto& g : groups) {
    if (g.scores.size() < 2)
      throw std::invalid_argument("permutation_null: each group needs n >= 2");
    pool.insert(pool.end(), g.scores.begin(), g.scores.end());
    sizes.push_back(g.scores.size());
  }
  const std::size_t total = pool.size();
  const std::size_t k = sizes.size();

  std::vector<double> raw(n_iter);
  parallel_for(n_iter, [&](std::size_t i) {
    Rng rng(substream(seed, i));
    std::vector<double> perm(pool);
    // Fisher-Yates
    for (std::size_t j = total - 1; j > 0; --j) {
      const std::size_t swap_with = static_cast<std::size_t>(rng.bounded(j + 1));
      std::swap(perm[j], perm[swap_with]);
    }
    if (kind == StatKind::t_pooled) {
      raw[i] = detail::raw_t_pooled({perm.data(), sizes[0]},
                                    {perm.data() + sizes[0], sizes[1]});
    } else {
      raw[i] = detail::raw_f_anova(perm, sizes);
    }
  });

  EmpiricalDistribution out;
  out.statistic_kind = kind;
  out.n_iter = n_iter;
  out.seed = seed;
  out.reference = kind == StatKind::t_pooled
                      ? DistSpec::student_t(static_cast<double>(total - 2))
                      : DistSpec::f(static_cast<double>(k - 1),
                                    static_cast<double>(total - k));
  out.values.reserve(n_iter);
  for (double v : raw) {
    if (std::isnan(v))
      ++out.degenerate_count;
    else
      out.values.push_back(v);
  }
  if (!out.values.empty()) {
    out.ks_distance = ks_distance(out.values, out.reference);
    out.histogram = histogram(out.values, bins);
  }
  return out;
}

// Monte Carlo p-value with the add-one convention, p = (b + 1) / (N + 1).
inline double permutation_p_value(double observed, const EmpiricalDistribution& dist,
                                  Tail tail) {
  if (dist.values.empty())
    throw std::invalid_argument("permutation_p_value: empty distribution");
  std::size_t b = 0;
  switch (tail) {
    case Tail::two_sided: {
      const double m = std::fabs(observed);
      for (double v : dist.values)
        if (std::fabs(v) >= m) ++b;
      break;
    }
    case Tail::right:
      for (double v : dist.values)
        if (v >= observed) ++b;
      break;
    case Tail::left:
      for (double v : dist.values)
        if (v <= observed) ++b;
      break;
  }
  return static_cast<double>(b + 1) / static_cast<double>(dist.values.size() + 1);
}

}  // namespace qstat

#endif  // QSTAT_RESAMPLE_HPP
