#ifndef POLYRANK_RNG_HPP
#define POLYRANK_RNG_HPP

// Deterministic 64-bit generator (SplitMix64).  Identical sequences on every
// platform for a given seed; this is part of the reproducibility contract, so
// standard-library engines/distributions are deliberately not used.

#include <cstdint>

namespace polyrank {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, bound); rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Derive an independent stream deterministically from this one.
  SplitMix64 fork() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace polyrank

#endif
