#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace goldman {

// SplitMix64 stream with Box-Muller normals. <random> engines are portable but
// the distributions are not; fixtures pin exact doubles, so everything random
// in the library goes through this generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0,1]; never 0, so log() is safe.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // One Box-Muller pair. Callers that need 4 normals draw two pairs; nothing
  // is cached, so the stream position is a pure function of the call sequence.
  std::pair<double, double> normal_pair() {
    const double two_pi = 6.283185307179586476925286766559;
    double r = std::sqrt(-2.0 * std::log(uniform01()));
    double a = two_pi * uniform01();
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

// Hash-derive an independent stream: trial i of a batch runs on
// derive_seed(base, i), so reports are reproducible per trial and
// insensitive to trial order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  Rng g(base ^ (salt * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
  g.next_u64();
  return g.next_u64();
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1,
                                 std::uint64_t s2) {
  return derive_seed(derive_seed(base, s1), s2);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1,
                                 std::uint64_t s2, std::uint64_t s3) {
  return derive_seed(derive_seed(base, s1, s2), s3);
}

}  // namespace goldman
