#ifndef QSTAT_DIST_HPP
#define QSTAT_DIST_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstat/rng.hpp"
#include "qstat/special.hpp"

namespace qstat {

enum class DistKind { normal, uniform, exponential, beta, student_t, f, chi_squared };

inline const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::normal: return "normal";
    case DistKind::uniform: return "uniform";
    case DistKind::exponential: return "exponential";
    case DistKind::beta: return "beta";
    case DistKind::student_t: return "student_t";
    case DistKind::f: return "f";
    case DistKind::chi_squared: return "chi_squared";
  }
  return "?";
}

inline DistKind dist_kind_from_string(const std::string& s) {
  if (s == "normal") return DistKind::normal;
  if (s == "uniform") return DistKind::uniform;
  if (s == "exponential") return DistKind::exponential;
  if (s == "beta") return DistKind::beta;
  if (s == "student_t") return DistKind::student_t;
  if (s == "f") return DistKind::f;
  if (s == "chi_squared") return DistKind::chi_squared;
  throw std::invalid_argument("unknown distribution kind: " + s);
}

struct DistSpec {
  DistKind kind;
  std::map<std::string, double> params;

  double param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
      throw std::domain_error(std::string("DistSpec: missing parameter ") + name);
    return it->second;
  }

  void validate() const {
    switch (kind) {
      case DistKind::normal:
        if (!(param("sigma") > 0.0)) throw std::domain_error("normal: sigma must be > 0");
        break;
      case DistKind::uniform:
        if (!(param("a") < param("b"))) throw std::domain_error("uniform: requires a < b");
        break;
      case DistKind::exponential:
        if (!(param("lambda") > 0.0))
          throw std::domain_error("exponential: lambda must be > 0");
        break;
      case DistKind::beta:
        if (!(param("a") > 0.0) || !(param("b") > 0.0))
          throw std::domain_error("beta: a and b must be > 0");
        break;
      case DistKind::student_t:
        if (!(param("df") >= 1.0)) throw std::domain_error("student_t: df must be >= 1");
        break;
      case DistKind::f:
        if (!(param("df1") >= 1.0) || !(param("df2") >= 1.0))
          throw std::domain_error("f: df1 and df2 must be >= 1");
        break;
      case DistKind::chi_squared:
        if (!(param("df") >= 1.0)) throw std::domain_error("chi_squared: df must be >= 1");
        break;
    }
  }

  static DistSpec normal(double mu, double sigma) {
    return {DistKind::normal, {{"mu", mu}, {"sigma", sigma}}};
  }
  static DistSpec uniform(double a, double b) {
    return {DistKind::uniform, {{"a", a}, {"b", b}}};
  }
  static DistSpec exponential(double lambda) {
    return {DistKind::exponential, {{"lambda", lambda}}};
  }
  static DistSpec beta(double a, double b) {
    return {DistKind::beta, {{"a", a}, {"b", b}}};
  }
  static DistSpec student_t(double df) { return {DistKind::student_t, {{"df", df}}}; }
  static DistSpec f(double df1, double df2) {
    return {DistKind::f, {{"df1", df1}, {"df2", df2}}};
  }
  static DistSpec chi_squared(double df) {
    return {DistKind::chi_squared, {{"df", df}}};
  }
};

inline double cdf(const DistSpec& spec, double x) {
  spec.validate();
  switch (spec.kind) {
    case DistKind::normal: {
      const double z = (x - spec.param("mu")) / spec.param("sigma");
      return 0.5 * std::erfc(-z / 1.4142135623730950488);
    }
    case DistKind::uniform: {
      const double a = spec.param("a"), b = spec.param("b");
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    }
    case DistKind::exponential: {
      if (x <= 0.0) return 0.0;
      return -std::expm1(-spec.param("lambda") * x);
    }
    case DistKind::beta: {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return special::reg_inc_beta(spec.param("a"), spec.param("b"), x);
    }
    case DistKind::student_t: {
      const double df = spec.param("df");
      if (x == 0.0) return 0.5;
      // complementary form keeps precision for |x| near 0, where df/(df+x^2)
      // would round to 1
      const double ib = special::reg_inc_beta(0.5, df / 2.0, x * x / (df + x * x));
      return x > 0.0 ? 0.5 + 0.5 * ib : 0.5 - 0.5 * ib;
    }
    case DistKind::f: {
      if (x <= 0.0) return 0.0;
      const double d1 = spec.param("df1"), d2 = spec.param("df2");
      return special::reg_inc_beta(d1 / 2.0, d2 / 2.0, d1 * x / (d1 * x + d2));
    }
    case DistKind::chi_squared: {
      if (x <= 0.0) return 0.0;
      return special::reg_lower_gamma(spec.param("df") / 2.0, x / 2.0);
    }
  }
  throw std::domain_error("cdf: invalid spec");
}

inline double pdf(const DistSpec& spec, double x) {
  spec.validate();
  switch (spec.kind) {
    case DistKind::normal: {
      const double s = spec.param("sigma");
      const double z = (x - spec.param("mu")) / s;
      return std::exp(-0.5 * z * z) / (s * 2.5066282746310005024);
    }
    case DistKind::uniform: {
      const double a = spec.param("a"), b = spec.param("b");
      return (x >= a && x <= b) ? 1.0 / (b - a) : 0.0;
    }
    case DistKind::exponential: {
      const double l = spec.param("lambda");
      return x < 0.0 ? 0.0 : l * std::exp(-l * x);
    }
    case DistKind::beta: {
      const double a = spec.param("a"), b = spec.param("b");
      if (x < 0.0 || x > 1.0) return 0.0;
      if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity()
                                   : (a == 1.0 ? b : 0.0);
      if (x == 1.0) return b < 1.0 ? std::numeric_limits<double>::infinity()
                                   : (b == 1.0 ? a : 0.0);
      const double ln_b = special::log_gamma(a + b) - special::log_gamma(a) -
                          special::log_gamma(b);
      return std::exp(ln_b + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
    }
    case DistKind::student_t: {
      const double df = spec.param("df");
      const double ln_c = special::log_gamma((df + 1.0) / 2.0) -
                          special::log_gamma(df / 2.0) -
                          0.5 * std::log(df * 3.141592653589793238462643);
      return std::exp(ln_c - 0.5 * (df + 1.0) * std::log1p(x * x / df));
    }
    case DistKind::f: {
      const double d1 = spec.param("df1"), d2 = spec.param("df2");
      if (x < 0.0) return 0.0;
      if (x == 0.0) {
        if (d1 < 2.0) return std::numeric_limits<double>::infinity();
        if (d1 == 2.0) return 1.0;
        return 0.0;
      }
      const double ln_b = special::log_gamma((d1 + d2) / 2.0) -
                          special::log_gamma(d1 / 2.0) - special::log_gamma(d2 / 2.0);
      const double ln_p = ln_b + (d1 / 2.0) * std::log(d1 / d2) +
                          (d1 / 2.0 - 1.0) * std::log(x) -
                          ((d1 + d2) / 2.0) * std::log1p(d1 * x / d2);
      return std::exp(ln_p);
    }
    case DistKind::chi_squared: {
      const double df = spec.param("df");
      if (x < 0.0) return 0.0;
      if (x == 0.0) {
        if (df < 2.0) return std::numeric_limits<double>::infinity();
        if (df == 2.0) return 0.5;
        return 0.0;
      }
      return std::exp((df / 2.0 - 1.0) * std::log(x) - x / 2.0 -
                      (df / 2.0) * 0.69314718055994530942 -
                      special::log_gamma(df / 2.0));
    }
  }
  throw std::domain_error("pdf: invalid spec");
}

// Inverse CDF by bracketing + bisection (max 200 iterations).
inline double quantile(const DistSpec& spec, double p) {
  spec.validate();
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("quantile: p must be in (0, 1)");
  double lo, hi;
  switch (spec.kind) {
    case DistKind::uniform:
      lo = spec.param("a");
      hi = spec.param("b");
      break;
    case DistKind::beta:
      lo = 0.0;
      hi = 1.0;
      break;
    case DistKind::exponential:
    case DistKind::f:
    case DistKind::chi_squared: {
      lo = 0.0;
      hi = 1.0;
      while (cdf(spec, hi) < p) {
        hi *= 2.0;
        if (hi > 1e300) throw std::domain_error("quantile: failed to bracket");
      }
      break;
    }
    default: {  // unbounded support
      lo = -1.0;
      hi = 1.0;
      while (cdf(spec, lo) > p) {
        lo *= 2.0;
        if (lo < -1e300) throw std::domain_error("quantile: failed to bracket");
      }
      while (cdf(spec, hi) < p) {
        hi *= 2.0;
        if (hi > 1e300) throw std::domain_error("quantile: failed to bracket");
      }
      break;
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(spec, mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-10 * std::max(1.0, std::fabs(lo) + std::fabs(hi)) &&
        std::fabs(cdf(spec, 0.5 * (lo + hi)) - p) < 1e-12)
      break;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

// Marsaglia-Tsang gamma sampler (shape only)
inline double sample_gamma(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - rng.uniform01();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace detail

inline double sample_one(const DistSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case DistKind::normal:
      return spec.param("mu") + spec.param("sigma") * rng.normal();
    case DistKind::uniform: {
      const double a = spec.param("a"), b = spec.param("b");
      return a + (b - a) * rng.uniform01();
    }
    case DistKind::exponential:
      return -std::log1p(-rng.uniform01()) / spec.param("lambda");
    case DistKind::beta: {
      const double a = spec.param("a"), b = spec.param("b");
      if (a == 0.5 && b == 0.5) {
        // arcsine law: closed-form inverse CDF
        const double s = std::sin(1.5707963267948966192 * rng.uniform01());
        return s * s;
      }
      const double g1 = detail::sample_gamma(rng, a);
      const double g2 = detail::sample_gamma(rng, b);
      return g1 / (g1 + g2);
    }
    default:
      throw std::domain_error(std::string("sample: unsupported distribution kind ") +
                              to_string(spec.kind));
  }
}

inline std::vector<double> sample(const DistSpec& spec, std::size_t n, RngSeed seed) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sample_one(spec, rng);
  return out;
}

}  // namespace qstat

#endif  // QSTAT_DIST_HPP
