#pragma once

#include <cmath>
#include <cstdint>

namespace matchq {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Counter-based generator: output i of stream `key` is a hash of (key, i).
// Deterministic within a build; no promise of bit-exactness across implementations.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(seed), counter_(0) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
  }

  // Open interval (0,1); never 0, so log() below is safe.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_exponential(double rate) { return -std::log(next_unit()) / rate; }

  // Independent stream key for replication `index` of a base seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return detail::mix64(seed ^ detail::mix64(index + 0x9E3779B97F4A7C15ULL));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace matchq
