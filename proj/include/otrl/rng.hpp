#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace otrl {

// Deterministic pseudo-random source. mt19937_64 is fully pinned by the
// standard, and every draw goes through explicit helpers (no distribution
// objects), so a seed reproduces the same sequence on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], both ends included.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit FNV-1a; used to derive per-suite seeds from suite names.
std::uint64_t fnv1a64(std::string_view text);

// Random grid value k/2^denom_log2 in [0, 1], endpoints included.
double dyadic_unit(Rng& rng, int denom_log2);

// n strictly positive weights with denominator 2^denom_log2 that sum to
// exactly 1.0 in floating point. Requires 1 <= n <= 2^denom_log2.
std::vector<double> dyadic_weights(Rng& rng, int n, int denom_log2);

}  // namespace otrl
