#ifndef QSTAT_DESCRIPTIVE_HPP
#define QSTAT_DESCRIPTIVE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qstat {

// One condition's vector of opinion scores.
struct GroupSample {
  std::string id;
  std::vector<double> scores;
};

// Kurtosis is non-excess (normal = 3) throughout. Variance is unbiased
// (divisor n-1). Skewness and kurtosis are NaN for constant groups.
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  double sos = 0.0;  // standard deviation of opinion scores, sqrt(variance)
};

inline SummaryStats moments(const GroupSample& g) {
  const std::size_t n = g.scores.size();
  if (n < 1) throw std::invalid_argument("moments: empty group " + g.id);
  SummaryStats s;
  s.n = n;
  double sum = 0.0;
  for (double x : g.scores) sum += x;
  s.mean = sum / static_cast<double>(n);
  if (n < 2) {
    s.variance = s.sos = 0.0;
    s.skewness = s.kurtosis = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : g.scores) {
    const double d = x - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double nd = static_cast<double>(n);
  s.variance = m2 / (nd - 1.0);
  s.sos = std::sqrt(s.variance);
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 == 0.0) {
    s.skewness = s.kurtosis = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  return s;
}

inline double pooled_variance(double s1_sq, std::size_t n1, double s2_sq,
                              std::size_t n2) {
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("pooled_variance: each group needs n >= 2");
  if (s1_sq < 0.0 || s2_sq < 0.0)
    throw std::domain_error("pooled_variance: variances must be >= 0");
  return (s1_sq * static_cast<double>(n1 - 1) + s2_sq * static_cast<double>(n2 - 1)) /
         static_cast<double>(n1 + n2 - 2);
}

inline double grand_mean(const std::vector<GroupSample>& groups) {
  if (groups.empty()) throw std::invalid_argument("grand_mean: no groups");
  double sum = 0.0;
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.scores.empty())
      throw std::invalid_argument("grand_mean: empty group " + g.id);
    for (double x : g.scores) sum += x;
    total += g.scores.size();
  }
  return sum / static_cast<double>(total);
}

// Fraction of scores strictly below the threshold.
inline double pdu(const GroupSample& g, double threshold) {
  if (g.scores.empty()) throw std::invalid_argument("pdu: empty group " + g.id);
  std::size_t below = 0;
  for (double x : g.scores)
    if (x < threshold) ++below;
  return static_cast<double>(below) / static_cast<double>(g.scores.size());
}

}  // namespace qstat

#endif  // QSTAT_DESCRIPTIVE_HPP
