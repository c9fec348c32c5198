#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/permutation.hpp"

namespace permutwin {

/// Identifies one trial of an experiment. The generator state of a trial is a
/// pure function of this pair, so trials can run in any order.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(SeedSpec seed) noexcept {
  return splitmix64(splitmix64(seed.master_seed) ^ splitmix64(seed.trial_index + 0x632BE59BD9B4E019ULL));
}

/// mt19937_64 plus an unbiased bounded draw. std::uniform_int_distribution is
/// left out on purpose: its output is not specified across standard libraries.
class TrialRng {
 public:
  explicit TrialRng(SeedSpec seed) : engine_(trial_seed(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle of the identity.
inline Permutation random_permutation(std::size_t n, TrialRng& rng) {
  if (n == 0) throw PreconditionViolation("random_permutation: n must be at least 1");
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i) + 1;
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation(std::move(v));
}

inline Permutation random_permutation(std::size_t n, SeedSpec seed) {
  TrialRng rng(seed);
  return random_permutation(n, rng);
}

}  // namespace permutwin
