#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permutwin/errors.hpp"

namespace permutwin {

enum class Sign : std::uint8_t { minus, plus };

constexpr Sign flip(Sign s) noexcept {
  return s == Sign::plus ? Sign::minus : Sign::plus;
}

constexpr Sign sign_between(int left, int right) noexcept {
  return left < right ? Sign::plus : Sign::minus;
}

/// Sequence of comparisons between neighbours: `plus` at index i means the
/// (i+1)-th element is larger than the i-th. Two sequences are weakly similar
/// exactly when their shapes are equal.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  /// Parses the text form, a string over {'+', '-'}; the empty string is the
  /// shape of a single element.
  static Shape parse(std::string_view text) {
    std::vector<Sign> signs;
    signs.reserve(text.size());
    for (char c : text) {
      if (c == '+') {
        signs.push_back(Sign::plus);
      } else if (c == '-') {
        signs.push_back(Sign::minus);
      } else {
        throw MalformedInput("shape text may only contain '+' and '-'");
      }
    }
    return Shape(std::move(signs));
  }

  // Bit i of `bits` set means sign i is plus.
  static Shape from_bits(std::uint64_t bits, std::size_t length) {
    std::vector<Sign> signs(length);
    for (std::size_t i = 0; i < length; ++i) {
      signs[i] = (bits >> i) & 1U ? Sign::plus : Sign::minus;
    }
    return Shape(std::move(signs));
  }

  static Shape alternating(std::size_t length, Sign first) {
    std::vector<Sign> signs(length);
    for (std::size_t i = 0; i < length; ++i) {
      signs[i] = i % 2 == 0 ? first : flip(first);
    }
    return Shape(std::move(signs));
  }

  std::size_t size() const noexcept { return signs_.size(); }
  bool empty() const noexcept { return signs_.empty(); }
  Sign operator[](std::size_t i) const { return signs_[i]; }
  auto begin() const noexcept { return signs_.begin(); }
  auto end() const noexcept { return signs_.end(); }
  const std::vector<Sign>& signs() const noexcept { return signs_; }

  bool is_alternating() const noexcept {
    for (std::size_t i = 1; i < signs_.size(); ++i) {
      if (signs_[i] == signs_[i - 1]) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string out;
    out.reserve(signs_.size());
    for (Sign s : signs_) out.push_back(s == Sign::plus ? '+' : '-');
    return out;
  }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<Sign> signs_;
};

inline Shape complement_shape(const Shape& s) {
  std::vector<Sign> out;
  out.reserve(s.size());
  for (Sign x : s) out.push_back(flip(x));
  return Shape(std::move(out));
}

/// A permutation of {1..n} stored by value, position i (zero-based) holding
/// the value at one-based position i+1. Any sequence of distinct positive
/// integers is accepted and reduced to its relative order.
class Permutation {
 public:
  explicit Permutation(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty()) throw MalformedInput("a permutation needs at least one value");
    std::vector<int> sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() <= 0) throw MalformedInput("permutation values must be positive");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw MalformedInput("permutation values must be distinct");
    }
    if (sorted.back() != static_cast<int>(sorted.size())) {
      for (int& v : values_) {
        v = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1;
      }
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i) + 1;
    return Permutation(std::move(v));
  }

  /// Parses the one-line text form, e.g. "6 1 4 3 7 9 8 2 5".
  static Permutation parse(std::string_view text) {
    std::vector<int> values;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
      if (i == text.size()) break;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != '\r') ++j;
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, v);
      if (ec != std::errc() || ptr != text.data() + j) {
        throw MalformedInput("not an integer: '" + std::string(text.substr(i, j - i)) + "'");
      }
      values.push_back(v);
      i = j;
    }
    return Permutation(std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  std::span<const int> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  /// Steps to the lexicographically next permutation in place; returns false
  /// (and wraps to the identity) after the last one.
  bool next_lexicographic() { return std::next_permutation(values_.begin(), values_.end()); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(values_[i]);
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

inline Shape shape_of(std::span<const int> values) {
  std::vector<Sign> signs;
  if (values.size() > 1) signs.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) signs.push_back(sign_between(values[i - 1], values[i]));
  return Shape(std::move(signs));
}

inline Shape shape(const Permutation& p) { return shape_of(p.values()); }

/// Shape of the subsequence of `p` at the given (ascending) positions.
inline Shape shape_at(const Permutation& p, std::span<const std::size_t> positions) {
  std::vector<Sign> signs;
  if (positions.size() > 1) signs.reserve(positions.size() - 1);
  for (std::size_t i = 1; i < positions.size(); ++i) {
    signs.push_back(sign_between(p[positions[i - 1]], p[positions[i]]));
  }
  return Shape(std::move(signs));
}

/// Maps value v to n+1-v, which complements the shape.
inline Permutation complement_values(const Permutation& p) {
  const int top = static_cast<int>(p.size()) + 1;
  std::vector<int> out(p.begin(), p.end());
  for (int& v : out) v = top - v;
  return Permutation(std::move(out));
}

inline Permutation reverse_positions(const Permutation& p) {
  return Permutation(std::vector<int>(p.values().rbegin(), p.values().rend()));
}

/// Calls f(p) for every permutation of [n] in lexicographic order.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  Permutation p = Permutation::identity(n);
  do {
    f(static_cast<const Permutation&>(p));
  } while (p.next_lexicographic());
}

}  // namespace permutwin
