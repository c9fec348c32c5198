#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/extremal.hpp"
#include "permutwin/permutation.hpp"

namespace permutwin {

/// Two disjoint ascending lists of zero-based positions of equal length.
/// Whether they are weak twins in a given host is decided by
/// verify_weak_twins; nothing is checked on construction.
struct TwinPair {
  std::vector<std::size_t> pos_a;
  std::vector<std::size_t> pos_b;

  std::size_t length() const noexcept { return pos_a.size(); }
  friend bool operator==(const TwinPair&, const TwinPair&) = default;
};

struct TwinVerdict {
  bool valid = false;
  std::optional<Shape> common_shape;
};

enum class Alignment : std::uint8_t { upward, downward, none };

inline const char* to_string(Alignment a) {
  switch (a) {
    case Alignment::upward: return "upward";
    case Alignment::downward: return "downward";
    case Alignment::none: return "none";
  }
  return "none";
}

namespace detail {

inline void check_positions(std::span<const std::size_t> pos, std::size_t n, const char* which) {
  if (pos.empty()) throw MalformedInput(std::string(which) + ": empty position list");
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] >= n) throw MalformedInput(std::string(which) + ": position out of range");
    if (i > 0 && pos[i] <= pos[i - 1]) {
      throw MalformedInput(std::string(which) + ": positions must be strictly ascending");
    }
  }
}

inline bool disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

inline bool same_shape(std::span<const int> v, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (sign_between(v[a[i - 1]], v[a[i]]) != sign_between(v[b[i - 1]], v[b[i]])) return false;
  }
  return true;
}

// The list whose last position is larger plays the role of A.
inline Alignment alignment_of(std::span<const int> v, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() < 2 || a.size() != b.size()) return Alignment::none;
  if (a.back() < b.back()) std::swap(a, b);
  const std::size_t k = a.size();
  const std::size_t j1 = b[k - 2], i1 = a[k - 2], j2 = b[k - 1], i2 = a[k - 1];
  if (!(j1 < i1 && i1 < j2 && j2 < i2)) return Alignment::none;
  if (v[j1] < v[i1] && v[i1] < v[j2] && v[j2] < v[i2]) return Alignment::upward;
  if (v[j1] > v[i1] && v[i1] > v[j2] && v[j2] > v[i2]) return Alignment::downward;
  return Alignment::none;
}

inline TwinPair last_ending_first(TwinPair t) {
  if (!t.pos_a.empty() && !t.pos_b.empty() && t.pos_a.back() < t.pos_b.back()) std::swap(t.pos_a, t.pos_b);
  return t;
}

// Extension of upward-aligned twins by a monotone run q lying
// strictly to their right. `t` must be valid and upward aligned in `v`.
inline TwinPair extend_upward(std::span<const int> v, const TwinPair& t, SegmentInterval q) {
  TwinPair base = last_ending_first(t);
  std::vector<std::size_t>& A = base.pos_a;
  std::vector<std::size_t>& B = base.pos_b;
  const std::size_t k = A.size();
  const int a = v[A[k - 1]];
  const int abar = v[A[k - 2]];
  const int b = v[B[k - 1]];
  const int bbar = v[B[k - 2]];
  const std::size_t s = q.size();
  auto qv = [&](std::size_t j) { return v[q.first + j]; };
  const int q1 = qv(0), q2 = qv(1);

  std::vector<std::size_t> newA = A, newB = B;
  // x gets run indices start, start+2, ...; y gets start+1, start+3, ...
  auto deal = [&](std::vector<std::size_t>& x, std::vector<std::size_t>& y, std::size_t start) {
    for (std::size_t j = start; j < s; ++j) ((j - start) % 2 == 0 ? x : y).push_back(q.first + j);
  };
  auto equalize = [&](std::vector<std::size_t>& x, std::vector<std::size_t>& y) {
    while (x.size() != y.size()) {
      auto& longer = x.size() > y.size() ? x : y;
      if (longer.back() < q.first) throw InvariantFailure("extend_aligned: equalizing would drop a twin element");
      longer.pop_back();
    }
  };

  if (q1 < q2) {
    if (q1 < b && q2 < a) {  // case 1
      deal(newB, newA, 0);
    } else if (q1 < b) {  // case 2: q1 < b < a < q2
      deal(newB, newA, 1);
    } else if (q2 > a) {  // case 3: q1 > b, q2 > a
      deal(newB, newA, 0);
    } else {  // case 4: b < q1 < q2 < a, lose a
      newA.pop_back();
      deal(newA, newB, 0);
    }
  } else {
    if (q1 < a && q2 < b) {  // (i)
      deal(newA, newB, 0);
    } else if (q1 < a) {  // (iv): a > q1 > q2 > b, lose b
      newB.pop_back();
      deal(newB, newA, 0);
    } else if (q2 > b) {  // (iii): q1 > a, q2 > b
      deal(newA, newB, 0);
    } else if (s >= 5) {  // (ii): q1 > a > b > q2, lose q1
      deal(newB, newA, 1);
    } else if (q2 > abar) {
      // (ii) with a run of exactly four: dropping q1 alone leaves b, a, q2, q3
      // non-monotone, so a is given up instead.
      newA.pop_back();
      newA.push_back(q.first + 1);
      newA.push_back(q.first + 3);
      newB.push_back(q.first + 2);
    } else if (q2 > bbar) {
      newB.pop_back();
      newB.push_back(q.first + 1);
      newB.push_back(q.first + 3);
      newA.push_back(q.first + 2);
    } else {
      // q2 < bbar: no aligned pair loses at most two elements here; the run is
      // skipped and the twins are returned unchanged.
      return base;
    }
  }
  equalize(newA, newB);
  return last_ending_first(TwinPair{std::move(newA), std::move(newB)});
}

inline bool is_monotone_run(std::span<const int> v, SegmentInterval q) {
  if (q.size() < 2) return true;
  const bool inc = v[q.first] < v[q.first + 1];
  for (std::size_t i = q.first + 1; i <= q.last; ++i) {
    if ((v[i - 1] < v[i]) != inc) return false;
  }
  return true;
}

inline TwinPair extend_aligned_unchecked(std::span<const int> v, const TwinPair& t, SegmentInterval q, Alignment al) {
  if (al == Alignment::upward) return extend_upward(v, t, q);
  const int top = static_cast<int>(v.size()) + 1;
  std::vector<int> flipped(v.begin(), v.end());
  for (int& x : flipped) x = top - x;
  return extend_upward(flipped, t, q);
}

}  // namespace detail

/// Checks that the two position lists select disjoint subsequences with equal
/// shapes. Throws MalformedInput for empty, unsorted, duplicated or
/// out-of-range positions; overlap and length mismatch yield valid=false.
inline TwinVerdict verify_weak_twins(const Permutation& p, const TwinPair& t) {
  detail::check_positions(t.pos_a, p.size(), "twin A");
  detail::check_positions(t.pos_b, p.size(), "twin B");
  TwinVerdict out;
  if (t.pos_a.size() != t.pos_b.size()) return out;
  if (!detail::disjoint(t.pos_a, t.pos_b)) return out;
  if (!detail::same_shape(p.values(), t.pos_a, t.pos_b)) return out;
  out.valid = true;
  out.common_shape = shape_at(p, t.pos_a);
  return out;
}

/// Whether the last two elements of each twin interleave by position and
/// form a monotone quadruple. The twin that ends later plays the role of A.
inline Alignment alignment(const Permutation& p, const TwinPair& t) {
  if (!verify_weak_twins(p, t).valid) throw PreconditionViolation("alignment: not a pair of weak twins");
  if (t.length() < 2) throw PreconditionViolation("alignment: twins must have length at least 2");
  return detail::alignment_of(p.values(), t.pos_a, t.pos_b);
}

/// Extends aligned twins by a strictly monotone run of at least four
/// positions lying entirely to their right. The result is valid, aligned and
/// contains every element of t and q but at most two, except for one
/// configuration (decreasing run of exactly four after upward twins, with
/// a > b > bbar > q2 < q1 and q1 > a, or its mirror) where no such
/// extension exists and t is returned unchanged.
inline TwinPair extend_aligned(const Permutation& p, const TwinPair& t, SegmentInterval q) {
  const Alignment al = alignment(p, t);
  if (al == Alignment::none) throw PreconditionViolation("extend_aligned: twins are not aligned");
  if (q.last < q.first || q.last >= p.size()) throw PreconditionViolation("extend_aligned: run out of range");
  if (q.size() < 4) throw PreconditionViolation("extend_aligned: run must have at least four elements");
  if (!detail::is_monotone_run(p.values(), q)) throw PreconditionViolation("extend_aligned: run is not monotone");
  if (q.first <= std::max(t.pos_a.back(), t.pos_b.back())) {
    throw PreconditionViolation("extend_aligned: run must lie to the right of the twins");
  }
  TwinPair out = detail::extend_aligned_unchecked(p.values(), t, q, al);
  if (!verify_weak_twins(p, out).valid || detail::alignment_of(p.values(), out.pos_a, out.pos_b) == Alignment::none) {
    throw InvariantFailure("extend_aligned: extension lost validity or alignment");
  }
  return out;
}

/// Monotone runs used for gluing: each segment closed by the following
/// extremal point, keeping those with at least four elements. When two kept
/// runs would share that endpoint the later one starts one position further
/// right (and is dropped if it falls below four).
inline std::vector<SegmentInterval> gluing_runs(const Permutation& p, const SegmentDecomposition& d) {
  if (d.segments.empty() || d.segments.front().first != 0 || d.segments.back().last + 1 != p.size()) {
    throw PreconditionViolation("gluing_runs: decomposition does not cover the permutation");
  }
  std::vector<SegmentInterval> runs;
  for (std::size_t i = 0; i < d.segments.size(); ++i) {
    const std::size_t last = i + 1 < d.segments.size() ? d.segments[i + 1].first : d.segments[i].last;
    std::size_t first = d.segments[i].first;
    if (!runs.empty() && first <= runs.back().last) first = runs.back().last + 1;
    if (last >= first && last - first + 1 >= 4) runs.push_back({first, last});
  }
  return runs;
}

/// Twins assembled from the long monotone runs: seeded inside the first run
/// by alternate assignment, then extended run by run. Returns nullopt when no
/// run has four elements.
inline std::optional<TwinPair> glue_segments(const Permutation& p, const SegmentDecomposition& d) {
  const auto runs = gluing_runs(p, d);
  if (runs.empty()) return std::nullopt;
  const auto v = p.values();
  const SegmentInterval& seed = runs.front();
  const std::size_t used = seed.size() - seed.size() % 2;
  TwinPair t;
  for (std::size_t j = 0; j < used; ++j) (j % 2 == 0 ? t.pos_b : t.pos_a).push_back(seed.first + j);
  for (std::size_t r = 1; r < runs.size(); ++r) {
    const Alignment al = detail::alignment_of(v, t.pos_a, t.pos_b);
    if (al == Alignment::none) throw InvariantFailure("glue_segments: lost alignment");
    t = detail::extend_aligned_unchecked(v, t, runs[r], al);
  }
  if (!verify_weak_twins(p, t).valid) throw InvariantFailure("glue_segments: result is not a pair of weak twins");
  return t;
}

/// Splits the extremal points into a prefix block and a suffix block of the
/// same length whose alternation starts with the same sign.
inline TwinPair twins_from_extremal_split(const Permutation& p) {
  if (p.size() < 2) throw PreconditionViolation("twins_from_extremal_split: n must be at least 2");
  const auto ext = extremal_positions(p.values());
  const std::size_t k = ext.size();
  std::size_t m = k / 2;
  for (; m > 1; --m) {
    if (m % 2 == 0 ? 2 * m <= k : 2 * m + 1 <= k) break;
  }
  TwinPair t;
  if (m <= 1) {
    t.pos_a = {ext.front()};
    t.pos_b = {ext.back()};
    return t;
  }
  const std::size_t offset = m % 2 == 0 ? m : m + 1;
  t.pos_a.assign(ext.begin(), ext.begin() + static_cast<std::ptrdiff_t>(m));
  t.pos_b.assign(ext.begin() + static_cast<std::ptrdiff_t>(offset), ext.begin() + static_cast<std::ptrdiff_t>(offset + m));
  return t;
}

/// The longer of the extremal split and the glued runs.
inline TwinPair construct_weak_twins(const Permutation& p) {
  if (p.size() < 2) throw PreconditionViolation("construct_weak_twins: n must be at least 2");
  TwinPair split = twins_from_extremal_split(p);
  auto glued = glue_segments(p, decompose_segments(p));
  if (glued && glued->length() > split.length()) return std::move(*glued);
  return split;
}

}  // namespace permutwin
