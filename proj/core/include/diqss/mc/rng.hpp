#pragma once

#include <cstdint>

namespace diqss::mc {

/// Counter-based random stream: draw i of stream (seed, stream_id) is a fixed
/// avalanche of the triple, so identical inputs reproduce identical output
/// bit-for-bit regardless of thread schedule, and distinct stream ids give
/// statistically independent sequences.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id)
      : key_(mix(mix(seed ^ 0x243f6a8885a308d3ULL) ^
                 mix(stream_id + 0x13198a2e03707344ULL))) {}

  uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

 private:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  // SplitMix64 finalizer.
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace diqss::mc
