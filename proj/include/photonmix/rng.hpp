#ifndef PHOTONMIX_RNG_HPP
#define PHOTONMIX_RNG_HPP

#include <cstdint>
#include <random>

namespace photonmix {

// Seedable stream on top of std::mt19937_64. The engine's output sequence is
// fixed by the standard, and all conversions to doubles/integers below are
// done by hand, so a seed reproduces the same draws on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1]. The half-open-at-zero interval makes `u <= p` exact for
  // the degenerate cases p == 0 (never) and p == 1 (always).
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() <= p; }

  // Uniform integer in [lo, hi] by rejection sampling.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + x % range;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer: a bijective avalanche mix of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for repetition `index` of a run seeded with `master`.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

}  // namespace photonmix

#endif  // PHOTONMIX_RNG_HPP
