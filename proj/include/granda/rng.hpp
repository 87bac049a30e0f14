#pragma once

#include <cstdint>
#include <cmath>

namespace granda {

// splitmix64: tiny, portable, and identical across platforms, unlike the
// standard-library distributions whose output is implementation-defined.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // Inclusive on both ends.
  std::int64_t uniform_int(std::int64_t a, std::int64_t b) {
    return a + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(b - a + 1));
  }

  bool chance(double p) { return next_unit() < p; }
};

// Stable per-case stream: mixes a root seed with a suite tag and case index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t idx) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  h ^= tag + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= idx + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

inline std::uint64_t fnv1a(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
  return h;
}

}  // namespace granda
