#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/permutation.hpp"
#include "permutwin/weak_twins.hpp"

namespace permutwin {

/// Block structure of the adversarial permutation: k = ceil(cbrt(n)),
/// x_i = 2k^2 - 2(i-1)k - 1, and k' blocks whose lengths are
/// x_1, ..., x_{k'-1} followed by the remainder.
struct HardPermSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t k_prime = 0;
  std::vector<long long> x;  // x_1 .. x_k
  std::vector<std::size_t> segment_lengths;
};

inline std::size_t ceil_cbrt(std::size_t n) {
  std::size_t k = 0;
  while (k * k * k < n) ++k;
  return k;
}

inline HardPermSpec hard_permutation_spec(std::size_t n) {
  if (n < 8) throw PreconditionViolation("hard_permutation: n must be at least 8");
  HardPermSpec spec;
  spec.n = n;
  spec.k = ceil_cbrt(n);
  const auto k = static_cast<long long>(spec.k);
  for (long long i = 1; i <= k; ++i) spec.x.push_back(2 * k * k - 2 * (i - 1) * k - 1);
  std::size_t total = 0;
  for (long long xi : spec.x) {
    const auto len = static_cast<std::size_t>(xi);
    ++spec.k_prime;
    if (total + len >= n) {
      spec.segment_lengths.push_back(n - total);
      break;
    }
    spec.segment_lengths.push_back(len);
    total += len;
  }
  return spec;
}

/// Increasing runs P_1, ..., P_{k'} placed left to right, each run taking the
/// largest values not used by the runs before it.
inline std::pair<Permutation, HardPermSpec> hard_permutation(std::size_t n) {
  HardPermSpec spec = hard_permutation_spec(n);
  std::vector<int> v;
  v.reserve(n);
  int top = static_cast<int>(n);
  for (std::size_t len : spec.segment_lengths) {
    const int lo = top - static_cast<int>(len) + 1;
    for (int x = lo; x <= top; ++x) v.push_back(x);
    top = lo - 1;
  }
  return {Permutation(std::move(v)), std::move(spec)};
}

/// Whether both twins meet every block P_i, i < k', in the same number of
/// positions.
inline bool verify_equal_intersections(const Permutation& p, const TwinPair& t, const HardPermSpec& spec) {
  if (spec.n != p.size()) throw PreconditionViolation("verify_equal_intersections: spec is for a different n");
  std::size_t sum = 0;
  for (std::size_t len : spec.segment_lengths) sum += len;
  if (sum != p.size() || spec.segment_lengths.size() != spec.k_prime) {
    throw PreconditionViolation("verify_equal_intersections: inconsistent spec");
  }
  if (!verify_weak_twins(p, t).valid) throw PreconditionViolation("verify_equal_intersections: not a pair of weak twins");
  std::vector<std::size_t> block_of(p.size());
  std::size_t pos = 0;
  for (std::size_t b = 0; b < spec.segment_lengths.size(); ++b) {
    for (std::size_t j = 0; j < spec.segment_lengths[b]; ++j) block_of[pos++] = b;
  }
  std::vector<long long> diff(spec.k_prime, 0);
  for (std::size_t i : t.pos_a) ++diff[block_of[i]];
  for (std::size_t i : t.pos_b) --diff[block_of[i]];
  for (std::size_t b = 0; b + 1 < spec.k_prime; ++b) {
    if (diff[b] != 0) return false;
  }
  return true;
}

}  // namespace permutwin
