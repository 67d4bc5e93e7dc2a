#pragma once

#include <cstdint>

namespace mrproj {

// xorshift64* (Vigna's multiplied Marsaglia xorshift): the state update is
//   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
// and the output is x * 0x2545F4914F6CDD1D. Period 2^64 - 1 over nonzero
// states. Chosen for bit-reproducible experiments across platforms; every
// report records the seed it was driven by.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Fair coin in {-1, +1} from the top output bit.
  int sign() { return (next() >> 63) ? -1 : +1; }

  // Uniform integer in [0, n), n >= 1, by rejection-free scaling (bias is
  // negligible for the small n used here and keeps the stream deterministic).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace mrproj
