#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/permutation.hpp"
#include "permutwin/weak_twins.hpp"

namespace permutwin {

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap, const char* who) {
  if (cap > 40) throw PreconditionViolation(std::string(who) + ": cap above 40 is not supported");
  if (n > cap) throw SizeLimitExceeded(std::string(who) + ": n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

// Depth-first assignment of every position to A, B or neither. The first
// position used goes to A, so each unordered pair is met once. Signs are
// compared as soon as both twins have them.
template <bool Alternating, class Found>
class TwinDfs {
 public:
  TwinDfs(std::span<const int> v, std::size_t target, bool report_at_leaf, Found found)
      : v_(v), n_(v.size()), target_(target), leaf_only_(report_at_leaf), found_(found) {}

  void run() { step(0); }
  void raise_target(std::size_t t) { target_ = t; }
  // Neither side grows beyond this; enough when any pair of the target
  // length will do, since longer twins truncate to shorter ones.
  void cap_length(std::size_t l) { limit_ = l; }
  std::vector<std::size_t> side(int s) const { return {pos_[s].begin(), pos_[s].begin() + len_[s]}; }

 private:
  bool bit(int s, std::size_t i) const { return (bits_[s] >> i) & 1U; }

  bool push(int s, std::size_t i) {
    const std::size_t len = len_[s];
    if (len >= 1) {
      const bool up = v_[i] > v_[pos_[s][len - 1]];
      const std::size_t idx = len - 1;
      if constexpr (Alternating) {
        if (idx >= 1 && up == bit(s, idx - 1)) return false;
      }
      if (len_[1 - s] >= len + 1 && up != bit(1 - s, idx)) return false;
      const std::uint64_t mask = std::uint64_t{1} << idx;
      bits_[s] = up ? (bits_[s] | mask) : (bits_[s] & ~mask);
    }
    pos_[s][len_[s]++] = i;
    return true;
  }

  void step(std::size_t i) {
    if (stopped_) return;
    const std::size_t la = len_[0], lb = len_[1];
    if (la == lb && la >= 1 && la >= target_ && (!leaf_only_ || i == n_)) {
      if (found_(*this, la)) {
        stopped_ = true;
        return;
      }
    }
    if (i == n_) return;
    const std::size_t rem = n_ - i;
    const std::size_t ub = std::min({la + rem, lb + rem, (la + lb + rem) / 2});
    if (ub < std::max<std::size_t>(target_, 1)) return;
    for (int s = 0; s < 2; ++s) {
      if (s == 1 && la == 0) break;
      if (len_[s] < limit_ && push(s, i)) {
        step(i + 1);
        --len_[s];
        if (stopped_) return;
      }
    }
    step(i + 1);
  }

  std::span<const int> v_;
  std::size_t n_;
  std::size_t target_;
  bool leaf_only_;
  Found found_;
  bool stopped_ = false;
  std::size_t limit_ = 64;
  std::array<std::array<std::size_t, 64>, 2> pos_{};
  std::array<std::size_t, 2> len_{0, 0};
  std::uint64_t bits_[2] = {0, 0};
};

template <bool Alternating>
std::size_t longest_twins(std::span<const int> v) {
  std::size_t best = 0;
  const std::size_t half = v.size() / 2;
  auto found = [&best, half](auto& dfs, std::size_t len) {
    best = len;
    dfs.raise_target(len + 1);
    return len == half;
  };
  TwinDfs<Alternating, decltype(found)> dfs(v, 1, false, found);
  dfs.run();
  return best;
}

template <bool Alternating>
bool twins_of_length_exist(std::span<const int> v, std::size_t length) {
  if (length == 0) return true;
  bool hit = false;
  auto found = [&hit](auto&, std::size_t) { return hit = true; };
  TwinDfs<Alternating, decltype(found)> dfs(v, length, false, found);
  dfs.cap_length(length);
  dfs.run();
  return hit;
}

template <bool Alternating, class Visitor>
void enumerate_twins(std::span<const int> v, std::size_t min_length, Visitor&& visit) {
  auto found = [&visit](auto& dfs, std::size_t) {
    visit(TwinPair{dfs.side(0), dfs.side(1)});
    return false;
  };
  TwinDfs<Alternating, decltype(found)> dfs(v, std::max<std::size_t>(min_length, 1), true, found);
  dfs.run();
}

}  // namespace detail

/// Exact wt(p) by exhaustive search; 0 when n = 1.
inline std::size_t wt_oracle(const Permutation& p, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "wt_oracle");
  return detail::longest_twins<false>(p.values());
}

/// Whether p contains weak twins of the given length.
inline bool has_weak_twins(const Permutation& p, std::size_t length, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "has_weak_twins");
  return detail::twins_of_length_exist<false>(p.values(), length);
}

/// Calls visit(const TwinPair&) once for every unordered pair of weak twins
/// of length at least min_length. pos_a holds the smaller first position.
template <class Visitor>
void enumerate_weak_twins(const Permutation& p, std::size_t min_length, Visitor&& visit, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "enumerate_weak_twins");
  detail::enumerate_twins<false>(p.values(), min_length, visit);
}

/// Exact alpha(p): the longest weak twins with an alternating common shape.
inline std::size_t alpha_oracle(const Permutation& p, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "alpha_oracle");
  return detail::longest_twins<true>(p.values());
}

inline bool has_alternating_twins(const Permutation& p, std::size_t length, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "has_alternating_twins");
  return detail::twins_of_length_exist<true>(p.values(), length);
}

template <class Visitor>
void enumerate_alternating_twins(const Permutation& p, std::size_t min_length, Visitor&& visit, std::size_t cap = 14) {
  detail::check_cap(p.size(), cap, "enumerate_alternating_twins");
  detail::enumerate_twins<true>(p.values(), min_length, visit);
}

}  // namespace permutwin
