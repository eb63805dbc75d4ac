#pragma once

#include <cstdint>
#include <limits>

namespace symest {

/// Counter-based random stream.
///
/// Output k is the SplitMix64 finalizer applied to seed + k * gamma, so a
/// stream is fully described by (seed, counter) and can be repositioned or
/// split without touching any other stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64() {
    ++counter_;
    return mix(seed_ + counter_ * kGamma);
  }

  /// Uniform double on the open interval (0, 1), 53 bits of resolution.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Independent child stream. Grid points use
  /// `split(level * 1000 + index)`; see `grid_stream_id`.
  RngStream split(std::uint64_t stream_id) const {
    return RngStream(mix(seed_ ^ mix(stream_id + kSplitSalt)));
  }

  // UniformRandomBitGenerator
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  friend bool operator==(const RngStream&, const RngStream&) = default;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSplitSalt = 0xD1B54A32D192ED03ULL;

  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Stream id for grid point `index` of zoom level `level` (levels count from 1).
/// Level 0 is reserved for the pipeline's non-grid stages.
constexpr std::uint64_t grid_stream_id(std::uint64_t level, std::uint64_t index) {
  return level * 1000 + index;
}

}  // namespace symest
