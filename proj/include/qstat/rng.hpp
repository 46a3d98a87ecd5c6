#ifndef QSTAT_RNG_HPP
#define QSTAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qstat {

// Seed for a counter-style generator. Identical (master_seed, stream_index)
// pairs reproduce identical sequences; distinct stream indices give
// statistically independent streams.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

namespace detail {
// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Derives the i-th substream of a base seed. Used to give each Monte Carlo
// iteration its own stream so results do not depend on execution order.
inline RngSeed substream(RngSeed base, std::uint64_t i) {
  return {base.master_seed,
          detail::mix64(base.stream_index ^ detail::mix64(i + 0x9e3779b97f4a7c15ULL))};
}

class Rng {
 public:
  explicit Rng(RngSeed seed) {
    state_ = detail::mix64(seed.master_seed + 0x9e3779b97f4a7c15ULL);
    state_ = detail::mix64(state_ ^ detail::mix64(seed.stream_index + 0xbf58476d1ce4e5b9ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::bounded: n must be positive");
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // standard normal via Box-Muller, one spare cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qstat

#endif  // QSTAT_RNG_HPP
