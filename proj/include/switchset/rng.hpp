#pragma once

// Seeded PRNG for reproducible simulation.
//
// splitmix64 core (Steele, Lea, Flood 2014): one 64-bit state, one
// mixing function, identical streams on every platform for the same
// seed. Distribution code lives here too so no standard-library
// distribution (whose streams vary across implementations) ever touches
// the output.

#include <cstdint>
#include <stdexcept>

namespace switchset {

inline constexpr const char* kRngAlgorithm = "splitmix64";

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform integer in [lo, hi], inclusive. Modulo reduction; the bias
  // is below 2^-50 for the span sizes used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  // Binomial(n, p) as n Bernoulli draws; n stays small in this library.
  std::int64_t binomial(std::int64_t n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: negative count");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i)
      if (bernoulli(p)) ++hits;
    return hits;
  }

 private:
  std::uint64_t state_;
};

// Stable per-index child seed, used to give every Monte Carlo replicate
// an independent stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace switchset
