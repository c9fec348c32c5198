#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permutwin/errors.hpp"
#include "permutwin/parallel.hpp"
#include "permutwin/permutation.hpp"

namespace permutwin {

using BigCount = boost::multiprecision::cpp_int;

/// Number of permutations of [len(s)+1] with shape s. After i steps, f[j]
/// counts arrangements whose last element has rank j among the first i+1.
template <class Int = BigCount>
Int count_shape_dp(const Shape& s) {
  std::vector<Int> f{Int(1)}, g;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t m = f.size() + 1;
    g.assign(m, Int(0));
    if (s[i] == Sign::plus) {
      Int acc = 0;
      for (std::size_t j = 0; j < m; ++j) {
        g[j] = acc;
        if (j < f.size()) acc += f[j];
      }
    } else {
      Int acc = 0;
      for (std::size_t j = m; j-- > 0;) {
        if (j < f.size()) acc += f[j];
        g[j] = acc;
      }
    }
    f.swap(g);
  }
  Int total = 0;
  for (const Int& x : f) total += x;
  return total;
}

inline BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace detail {

// Pascal rows up to n.
inline std::vector<std::vector<BigCount>> pascal(std::size_t n) {
  std::vector<std::vector<BigCount>> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i].assign(i + 1, BigCount(1));
    for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

}  // namespace detail

/// N(s) by the position of the maximum: with m elements and the maximum at
/// position k (1-based), the signs on its left and right must be + and -,
/// and the two sides are filled independently. Memoized on sub-intervals
/// of the shape.
inline BigCount count_shape_recursive(const Shape& s) {
  const std::size_t n = s.size() + 1;
  const auto choose = detail::pascal(n);
  // memo[a][b]: count for the elements a..b-1 (0-based, b > a), whose
  // shape is s[a .. b-2].
  std::vector<std::vector<std::optional<BigCount>>> memo(n + 1, std::vector<std::optional<BigCount>>(n + 1));
  auto count = [&](auto& self, std::size_t a, std::size_t b) -> BigCount {
    if (b - a <= 1) return 1;
    auto& slot = memo[a][b];
    if (slot) return *slot;
    const std::size_t m = b - a;
    BigCount total = 0;
    for (std::size_t k = a; k < b; ++k) {
      if (k > a && s[k - 1] != Sign::plus) continue;
      if (k + 1 < b && s[k] != Sign::minus) continue;
      total += choose[m - 1][k - a] * self(self, a, k) * self(self, k + 1, b);
    }
    slot = total;
    return total;
  };
  return count(count, 0, n);
}

/// Zigzag numbers A_0 .. A_nmax via the Entringer triangle
/// E(m, j) = E(m, j-1) + E(m-1, m-j), A_m = E(m, m).
inline std::vector<BigCount> andre_numbers(std::size_t n_max) {
  std::vector<BigCount> out{BigCount(1)};
  std::vector<BigCount> row{BigCount(1)}, next;
  for (std::size_t m = 1; m <= n_max; ++m) {
    next.assign(m + 1, BigCount(0));
    for (std::size_t j = 1; j <= m; ++j) next[j] = next[j - 1] + row[m - j];
    row.swap(next);
    out.push_back(row[m]);
  }
  return out;
}

/// Whether sum_k C(n,k) A_k A_{n-k} = 2 A_{n+1} for one n.
inline bool convolution_identity_holds(std::size_t n, const std::vector<BigCount>& a) {
  if (a.size() < n + 2) throw PreconditionViolation("convolution_identity_holds: table too short");
  BigCount lhs = 0;
  BigCount c = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    lhs += c * a[k] * a[n - k];
    c = c * (n - k) / (k + 1);
  }
  return lhs == 2 * a[n + 1];
}

/// Checks the identity for every 1 <= n <= n_max. At n = 0 the left side is
/// A_0^2 = 1 while 2 A_1 = 2, so n = 0 is not part of the range.
inline bool verify_convolution_identity(std::size_t n_max) {
  const auto a = andre_numbers(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!convolution_identity_holds(n, a)) return false;
  }
  return true;
}

/// Counts by enumerating all (len(s)+1)! permutations.
inline BigCount brute_count_shape(const Shape& s, std::size_t cap = 10) {
  const std::size_t n = s.size() + 1;
  if (cap > 12) throw PreconditionViolation("brute_count_shape: cap above 12 is not supported");
  if (n > cap) throw SizeLimitExceeded("brute_count_shape: n exceeds cap");
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = (v[i] < v[i + 1]) == (s[i] == Sign::plus);
    count += ok;
  } while (std::next_permutation(v.begin(), v.end()));
  return BigCount(count);
}

__extension__ typedef unsigned __int128 SweepCount;

namespace detail {

// Depth-first walk over all shapes extending `bits` (length `depth`), with
// f the rank vector after `depth` steps. Calls visit(bits, count) at length
// n-1.
template <class Visit>
void shape_sweep(std::size_t n, std::size_t depth, std::uint64_t bits, std::vector<std::vector<SweepCount>>& stack,
                 Visit& visit) {
  const auto& f = stack[depth];
  if (depth + 1 == n) {
    SweepCount total = 0;
    for (const auto& x : f) total += x;
    visit(bits, total);
    return;
  }
  auto& g = stack[depth + 1];
  const std::size_t m = f.size() + 1;
  g.assign(m, 0);
  {
    SweepCount acc = 0;
    for (std::size_t j = m; j-- > 0;) {
      if (j < f.size()) acc += f[j];
      g[j] = acc;
    }
    shape_sweep(n, depth + 1, bits, stack, visit);
  }
  g.assign(m, 0);
  {
    SweepCount acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      g[j] = acc;
      if (j < f.size()) acc += f[j];
    }
    shape_sweep(n, depth + 1, bits | (std::uint64_t{1} << depth), stack, visit);
  }
}

inline std::vector<SweepCount> rank_vector(std::uint64_t bits, std::size_t len) {
  std::vector<SweepCount> f{1}, g;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t m = f.size() + 1;
    g.assign(m, 0);
    SweepCount acc = 0;
    if ((bits >> i) & 1U) {
      for (std::size_t j = 0; j < m; ++j) {
        g[j] = acc;
        if (j < f.size()) acc += f[j];
      }
    } else {
      for (std::size_t j = m; j-- > 0;) {
        if (j < f.size()) acc += f[j];
        g[j] = acc;
      }
    }
    f.swap(g);
  }
  return f;
}

}  // namespace detail

/// Calls visit(bits, N(s)) for every shape s of length n-1, bit i set
/// meaning sign i is plus.
template <class Visit>
void for_each_shape_count(std::size_t n, Visit&& visit) {
  if (n == 0 || n > 25) throw SizeLimitExceeded("for_each_shape_count: n must be in 1..25");
  std::vector<std::vector<SweepCount>> stack(n);
  stack[0] = {1};
  detail::shape_sweep(n, 0, 0, stack, visit);
}

struct PopularReport {
  std::size_t n = 0;
  bool ok = false;
  BigCount a_n = 0;
  BigCount max_count = 0;
  std::optional<Shape> witness;  // a shape with N(s) > A_n, if any
  BigCount max_nonalt = 0;
  std::optional<Shape> max_nonalt_shape;
};

inline SweepCount to_sweep(const BigCount& x) {
  const BigCount mask = (BigCount(1) << 64) - 1;
  return (static_cast<SweepCount>(static_cast<std::uint64_t>(x >> 64)) << 64) |
         static_cast<std::uint64_t>(x & mask);
}

inline BigCount to_big(SweepCount x) {
  BigCount r = static_cast<std::uint64_t>(x >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(x);
  return r;
}

/// Sweeps all 2^(n-1) shapes and checks N(s) <= A_n. Ties for the non-
/// alternating maximum go to the smallest bit pattern, so the report does
/// not depend on the worker count.
inline PopularReport verify_most_popular(std::size_t n, std::size_t workers = 1) {
  if (n == 0) throw PreconditionViolation("verify_most_popular: n must be at least 1");
  if (n > 24) throw SizeLimitExceeded("verify_most_popular: n above 24");
  const std::size_t len = n - 1;
  const BigCount a_n = andre_numbers(n)[n];
  const std::uint64_t alt_plus = 0x5555555555555555ULL & ((std::uint64_t{1} << len) - 1);
  const std::uint64_t alt_minus = 0xAAAAAAAAAAAAAAAAULL & ((std::uint64_t{1} << len) - 1);
  const SweepCount a_small = to_sweep(a_n);

  struct Best {
    SweepCount max = 0;
    SweepCount nonalt = 0;
    std::uint64_t nonalt_bits = 0;
    bool has_nonalt = false;
    bool violated = false;
    std::uint64_t witness = 0;

    void add(std::uint64_t bits, SweepCount c, bool alt, SweepCount limit) {
      max = std::max(max, c);
      if (c > limit && (!violated || bits < witness)) {
        violated = true;
        witness = bits;
      }
      if (!alt && (!has_nonalt || c > nonalt || (c == nonalt && bits < nonalt_bits))) {
        has_nonalt = true;
        nonalt = c;
        nonalt_bits = bits;
      }
    }
  };
  const std::size_t split = std::min<std::size_t>(len, 6);
  std::vector<Best> parts(std::size_t{1} << split);
  parallel_for(parts.size(), workers, [&](std::size_t prefix) {
    Best& b = parts[prefix];
    auto visit = [&](std::uint64_t bits, SweepCount c) {
      b.add(bits, c, len == 0 || bits == alt_plus || bits == alt_minus, a_small);
    };
    std::vector<std::vector<SweepCount>> stack(n);
    stack[split] = detail::rank_vector(prefix, split);
    detail::shape_sweep(n, split, prefix, stack, visit);
  });
  Best best;
  for (const Best& b : parts) {
    best.max = std::max(best.max, b.max);
    if (b.violated) best.add(b.witness, a_small + 1, true, a_small);
    if (b.has_nonalt) best.add(b.nonalt_bits, b.nonalt, false, ~SweepCount{0});
  }

  PopularReport r;
  r.n = n;
  r.a_n = a_n;
  r.max_count = to_big(best.max);
  r.ok = !best.violated;
  if (best.violated) r.witness = Shape::from_bits(best.witness, len);
  if (best.has_nonalt) {
    r.max_nonalt = to_big(best.nonalt);
    r.max_nonalt_shape = Shape::from_bits(best.nonalt_bits, len);
  }
  return r;
}

}  // namespace permutwin
