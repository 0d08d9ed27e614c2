#include "otrl/rng.hpp"

#include <algorithm>

#include "otrl/error.hpp"

namespace otrl {

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double dyadic_unit(Rng& rng, int denom_log2) {
  require(denom_log2 >= 0 && denom_log2 <= 52, Errc::invalid_argument,
          "dyadic grid exponent must be in [0, 52]");
  const std::uint64_t denom = 1ULL << denom_log2;
  const std::uint64_t k = rng.next_u64() % (denom + 1);
  return static_cast<double>(k) / static_cast<double>(denom);
}

std::vector<double> dyadic_weights(Rng& rng, int n, int denom_log2) {
  require(denom_log2 >= 1 && denom_log2 <= 52, Errc::invalid_argument,
          "dyadic grid exponent must be in [1, 52]");
  const std::int64_t denom = std::int64_t{1} << denom_log2;
  require(n >= 1 && n <= denom, Errc::invalid_argument,
          "cannot split 2^denom_log2 units into that many positive parts");
  // Choose n-1 distinct cut points in (0, denom); the gaps are the numerators.
  std::vector<std::int64_t> cuts{0, denom};
  while (cuts.size() < static_cast<std::size_t>(n) + 1) {
    const std::int64_t c = rng.uniform_int(1, denom - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> weights;
  weights.reserve(n);
  // Each weight is (gap * 2^-denom_log2), exact in floating point; the sum
  // telescopes to denom/denom = 1.0 exactly because every partial sum is an
  // integer multiple of the grid step, representable up to 2^52.
  for (int i = 0; i < n; ++i) {
    weights.push_back(static_cast<double>(cuts[i + 1] - cuts[i]) /
                      static_cast<double>(denom));
  }
  return weights;
}

}  // namespace otrl
