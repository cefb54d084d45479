#ifndef TIPPING_RNG_HPP
#define TIPPING_RNG_HPP

#include <cmath>
#include <cstdint>

namespace tipping {

// Counter-style splittable generator: every (seed, stream) pair yields an
// independent sequence, so ensemble results do not depend on how work is
// scheduled across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Decorrelates stream indices before they are used as initial states.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = mix(seed + 0x9e3779b97f4a7c15ULL);
    std::uint64_t t = mix(index + 0xd1b54a32d192ed03ULL);
    return SplitMix64(mix(s ^ (t + 0x2545f4914f6cdd1dULL)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Standard normal draws by the polar rejection method, one cached spare.
class NormalSampler {
 public:
  explicit NormalSampler(SplitMix64 rng) : rng_(rng) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * rng_.uniform() - 1.0;
      v = 2.0 * rng_.uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tipping

#endif
