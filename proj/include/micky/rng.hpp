#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace micky {

// Seeded RNG with explicit distribution code. The standard library leaves
// distribution output unspecified across implementations, so everything an
// experiment emits must go through these routines to stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_u64(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform_u64(static_cast<std::uint64_t>(n)));
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform_range(double lo, double hi) {
    return lo + uniform_real() * (hi - lo);
  }

  // Standard exponential, mean 1.
  double exponential() {
    double u = uniform_real();
    // uniform_real() < 1, so 1 - u > 0.
    return -std::log(1.0 - u);
  }

  // Fisher-Yates; std::shuffle is implementation-defined.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream, e.g. one per workload or per replication.
  // Derived from the original seed, not the current engine state.
  Rng child(std::uint64_t stream) const { return Rng(mix(seed_, stream)); }

  // splitmix64 finalizer; decorrelates consecutive seeds and streams.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace micky
