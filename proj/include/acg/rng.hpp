#ifndef ACG_RNG_HPP
#define ACG_RNG_HPP

#include <cmath>
#include <cstdint>

namespace acg {

/// Counter-based random source. Output is a pure function of
/// (seed, stream, counter), so identical (seed, stream) pairs reproduce
/// identical sequences bit-exactly regardless of thread scheduling, and
/// distinct streams are independent for all practical purposes.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t counter = 0)
      : seed_(seed), stream_(stream), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  RandomSource fork(std::uint64_t substream) const {
    return RandomSource(seed_, mix(stream_ + 0x9E3779B97F4A7C15ull * (substream + 1)), 0);
  }

  std::uint64_t next_u64() { return hash(counter_++); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes exactly two counter values.
  double normal() {
    const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    return n ? next_u64() % n : 0;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t hash(std::uint64_t ctr) const {
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ull;
    z = mix(z ^ mix(stream_ + 0xD1B54A32D192ED03ull));
    z = mix(z + 0x9E3779B97F4A7C15ull * ctr);
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace acg

#endif
