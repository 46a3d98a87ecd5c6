#ifndef QSTAT_TESTS_FIXTURES_HPP
#define QSTAT_TESTS_FIXTURES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstat/descriptive.hpp"

namespace fixtures {

inline double kurtosis_of(const std::vector<double>& z) {
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(z.size());
  double m2 = 0.0, m4 = 0.0;
  for (double v : z) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(z.size());
  m4 /= static_cast<double>(z.size());
  return m4 / (m2 * m2);
}

// Symmetric base shape: n-2 grid points on [-1, 1] plus a +-c outlier pair.
inline std::vector<double> outlier_family(std::size_t n, double c) {
  std::vector<double> z(n);
  for (std::size_t i = 0; i + 2 < n; ++i)
    z[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 3);
  z[n - 2] = -c;
  z[n - 1] = c;
  return z;
}

// Builds an n-point group with the requested mean, unbiased variance, and
// (non-excess) kurtosis. Kurtosis is hit by bisecting the outlier magnitude;
// mean/variance by an affine transform, which leaves kurtosis unchanged.
inline qstat::GroupSample make_group(const std::string& id, std::size_t n,
                                     double mean, double variance,
                                     double kurtosis) {
  if (n < 6) throw std::invalid_argument("make_group: n too small");
  const double k_lo_c = kurtosis_of(outlier_family(n, 0.0));
  double lo, hi;
  bool decreasing;
  if (kurtosis <= k_lo_c) {
    lo = 0.0;
    hi = 1.0;
    decreasing = true;
    if (kurtosis < kurtosis_of(outlier_family(n, 1.0)))
      throw std::invalid_argument("make_group: kurtosis target too low");
  } else {
    lo = 1.0;
    hi = 50.0;
    decreasing = false;
    if (kurtosis > kurtosis_of(outlier_family(n, hi)))
      throw std::invalid_argument("make_group: kurtosis target too high");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double k = kurtosis_of(outlier_family(n, mid));
    const bool go_right = decreasing ? (k > kurtosis) : (k < kurtosis);
    if (go_right)
      lo = mid;
    else
      hi = mid;
  }
  std::vector<double> z = outlier_family(n, 0.5 * (lo + hi));
  double zm = 0.0;
  for (double v : z) zm += v;
  zm /= static_cast<double>(n);
  double zvar = 0.0;
  for (double v : z) zvar += (v - zm) * (v - zm);
  zvar /= static_cast<double>(n - 1);
  const double scale = std::sqrt(variance / zvar);
  qstat::GroupSample g{id, {}};
  g.scores.reserve(n);
  for (double v : z) g.scores.push_back(mean + scale * (v - zm));
  return g;
}

// Three synthetic n=26 groups with the published summary statistics of the
// real dataset (mean/variance/kurtosis per group).
inline std::vector<qstat::GroupSample> published_summary_groups() {
  return {make_group("g1", 26, 5.5769, 3.1338, 1.7971),
          make_group("g2", 26, 7.3846, 3.2862, 6.9602),
          make_group("g3", 26, 7.3077, 2.4615, 6.4978)};
}

}  // namespace fixtures

#endif
