#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/extremal.hpp"
#include "permutwin/permutation.hpp"
#include "permutwin/weak_twins.hpp"

namespace permutwin {

/// Extremal positions: an alternating subsequence of maximum length.
inline std::vector<std::size_t> longest_alternating(const Permutation& p) {
  return extremal_positions(p.values());
}

enum class PatternClass : std::uint8_t { lucky_six_a, lucky_six_b, lucky_six_c, lucky_six_d, cornered, crooked };

inline const char* to_string(PatternClass c) {
  switch (c) {
    case PatternClass::lucky_six_a: return "lucky_six_a";
    case PatternClass::lucky_six_b: return "lucky_six_b";
    case PatternClass::lucky_six_c: return "lucky_six_c";
    case PatternClass::lucky_six_d: return "lucky_six_d";
    case PatternClass::cornered: return "cornered";
    case PatternClass::crooked: return "crooked";
  }
  return "?";
}

struct PatternHit {
  std::size_t start = 0;  // zero-based
  PatternClass pattern_class = PatternClass::cornered;
  std::size_t window = 5;

  friend bool operator==(const PatternHit&, const PatternHit&) = default;
};

namespace detail {

inline bool monotone_run(std::span<const int> w) {
  if (w.size() < 2) return true;
  const bool up = w[0] < w[1];
  for (std::size_t i = 1; i < w.size(); ++i) {
    if ((w[i - 1] < w[i]) != up) return false;
  }
  return true;
}

}  // namespace detail

/// Classifies a window of six values. Types a and b rise then fall; c and d
/// are their value complements.
inline std::optional<PatternClass> lucky_six_type(std::span<const int> w) {
  if (w.size() != 6) return std::nullopt;
  auto rises = [&](std::size_t i) { return w[i] < w[i + 1]; };
  const bool s0 = rises(0), s1 = rises(1), s2 = rises(2), s3 = rises(3), s4 = rises(4);
  if (s0 && s1 && s2 && !s3 && !s4 && w[2] > w[4]) return PatternClass::lucky_six_a;
  if (s0 && s1 && !s2 && !s3 && !s4 && w[1] < w[3]) return PatternClass::lucky_six_b;
  if (!s0 && !s1 && !s2 && s3 && s4 && w[2] < w[4]) return PatternClass::lucky_six_c;
  if (!s0 && !s1 && s2 && s3 && s4 && w[1] > w[3]) return PatternClass::lucky_six_d;
  return std::nullopt;
}

/// Offset inside the window of the point that stays extremal once the
/// host's extremal points are removed.
constexpr std::size_t lucky_six_anchor(PatternClass c) {
  return (c == PatternClass::lucky_six_a || c == PatternClass::lucky_six_c) ? 2 : 3;
}

inline bool is_cornered(std::span<const int> w) {
  if (w.size() != 5) return false;
  if (detail::monotone_run(w)) return false;
  return detail::monotone_run(w.subspan(0, 4)) || detail::monotone_run(w.subspan(1, 4));
}

// Middle three monotone while neither four-run is.
inline bool is_crooked(std::span<const int> w) {
  if (w.size() != 5) return false;
  return detail::monotone_run(w.subspan(1, 3)) && !detail::monotone_run(w.subspan(0, 4)) &&
         !detail::monotone_run(w.subspan(1, 4));
}

inline std::vector<PatternHit> find_lucky_sixes(const Permutation& p) {
  std::vector<PatternHit> out;
  const auto v = p.values();
  for (std::size_t i = 0; i + 6 <= v.size(); ++i) {
    if (auto c = lucky_six_type(v.subspan(i, 6))) out.push_back({i, *c, 6});
  }
  return out;
}

inline std::vector<PatternHit> find_cornered(const Permutation& p) {
  std::vector<PatternHit> out;
  const auto v = p.values();
  for (std::size_t i = 0; i + 5 <= v.size(); ++i) {
    if (is_cornered(v.subspan(i, 5))) out.push_back({i, PatternClass::cornered, 5});
  }
  return out;
}

inline std::vector<PatternHit> find_crooked(const Permutation& p) {
  std::vector<PatternHit> out;
  const auto v = p.values();
  for (std::size_t i = 0; i + 5 <= v.size(); ++i) {
    if (is_crooked(v.subspan(i, 5))) out.push_back({i, PatternClass::crooked, 5});
  }
  return out;
}

/// e, co and cr with upper = floor((e+co+cr)/2). `neighbours` counts the
/// non-extremal positions adjacent to an extremal one; floor((e+neighbours)/2)
/// bounds alpha for every host, while `upper` can be short by one near the
/// ends of small hosts (edge_slack = neighbours - co - cr).
struct AltBoundReport {
  std::size_t e = 0;
  std::size_t co = 0;
  std::size_t cr = 0;
  std::size_t upper = 0;
  std::size_t neighbours = 0;
  std::size_t edge_slack = 0;
  std::size_t neighbour_upper = 0;
};

inline std::size_t count_cornered(std::span<const int> v) {
  std::size_t c = 0;
  for (std::size_t i = 0; i + 5 <= v.size(); ++i) c += is_cornered(v.subspan(i, 5));
  return c;
}

inline std::size_t count_crooked(std::span<const int> v) {
  std::size_t c = 0;
  for (std::size_t i = 0; i + 5 <= v.size(); ++i) c += is_crooked(v.subspan(i, 5));
  return c;
}

inline AltBoundReport alt_upper_bound(const Permutation& p) {
  if (p.size() < 2) throw PreconditionViolation("alt_upper_bound: n must be at least 2");
  const auto v = p.values();
  AltBoundReport r;
  std::vector<char> ext(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    ext[i] = detail::is_extremal_at(v, i);
    r.e += ext[i];
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (ext[i]) continue;
    if ((i > 0 && ext[i - 1]) || (i + 1 < v.size() && ext[i + 1])) ++r.neighbours;
  }
  r.co = count_cornered(v);
  r.cr = count_crooked(v);
  r.upper = (r.e + r.co + r.cr) / 2;
  r.edge_slack = r.neighbours >= r.co + r.cr ? r.neighbours - r.co - r.cr : 0;
  r.neighbour_upper = (r.e + r.neighbours) / 2;
  return r;
}

/// The sub-permutation left after deleting every extremal point, given by
/// the surviving host positions (ascending).
inline std::vector<std::size_t> non_extremal_positions(const Permutation& p) {
  std::vector<std::size_t> out;
  const auto v = p.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!detail::is_extremal_at(v, i)) out.push_back(i);
  }
  return out;
}

/// Extremal points of the remainder after removing the host's extremal
/// points, as host positions.
inline std::vector<std::size_t> second_layer_extremal(const Permutation& p) {
  const auto rest = non_extremal_positions(p);
  std::vector<int> sub;
  sub.reserve(rest.size());
  for (std::size_t i : rest) sub.push_back(p[i]);
  std::vector<std::size_t> out;
  for (std::size_t j : extremal_positions(sub)) out.push_back(rest[j]);
  return out;
}

namespace detail {

// Whether positions `seq` form an alternating subsequence of v.
inline bool alternates(std::span<const int> v, std::span<const std::size_t> seq) {
  for (std::size_t i = 2; i < seq.size(); ++i) {
    if ((v[seq[i - 2]] < v[seq[i - 1]]) == (v[seq[i - 1]] < v[seq[i]])) return false;
  }
  return true;
}

// Joins two alternating position lists (x entirely left of y) into one
// alternating list, dropping the fewest elements at the junction: a tail of
// x and a head of y. Ties drop from the shorter side, then from y.
inline std::vector<std::size_t> join_alternating(std::span<const int> v, std::span<const std::size_t> x,
                                                 std::span<const std::size_t> y) {
  auto ok = [&](std::size_t dx, std::size_t dy) {
    const std::size_t nx = x.size() - dx;
    std::array<std::size_t, 4> win{};
    std::size_t m = 0;
    for (std::size_t i = nx >= 2 ? nx - 2 : 0; i < nx; ++i) win[m++] = x[i];
    for (std::size_t i = dy; i < y.size() && i < dy + 2; ++i) win[m++] = y[i];
    return alternates(v, std::span<const std::size_t>(win.data(), m));
  };
  // Deleting from the shorter side first; on equal length, from y.
  const bool x_first = x.size() < y.size();
  for (std::size_t total = 0; total <= x.size() + y.size(); ++total) {
    for (std::size_t j = 0; j <= total; ++j) {
      const std::size_t dx = x_first ? total - j : j;
      const std::size_t dy = total - dx;
      if (dx > x.size() || dy > y.size() || !ok(dx, dy)) continue;
      std::vector<std::size_t> out(x.begin(), x.end() - static_cast<std::ptrdiff_t>(dx));
      out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(dy), y.end());
      return out;
    }
  }
  return {};
}

}  // namespace detail

/// Alternating twins built from two layers of extremal points: the host's
/// extremal points E and those of the remainder E'. Each is split at n/2;
/// the chains E-left + E'-right and E'-left + E-right are joined at the
/// middle, brought to a common phase and cut to a common length.
inline TwinPair construct_alternating_twins(const Permutation& p) {
  const std::size_t n = p.size();
  if (n < 4) throw PreconditionViolation("construct_alternating_twins: n must be at least 4");
  const auto v = p.values();
  const std::size_t h = n / 2;
  const auto E = extremal_positions(v);
  const auto E2 = second_layer_extremal(p);
  auto split = [h](const std::vector<std::size_t>& s) {
    const auto mid = std::lower_bound(s.begin(), s.end(), h);
    return std::pair{std::span<const std::size_t>(s.data(), static_cast<std::size_t>(mid - s.begin())),
                     std::span<const std::size_t>(s.data() + (mid - s.begin()), static_cast<std::size_t>(s.end() - mid))};
  };
  const auto [a1, a2] = split(E);
  const auto [b1, b2] = split(E2);
  std::vector<std::size_t> c1 = detail::join_alternating(v, a1, b2);
  std::vector<std::size_t> c2 = detail::join_alternating(v, b1, a2);

  auto rising = [&](const std::vector<std::size_t>& c) { return v[c[0]] < v[c[1]]; };
  if (c1.size() >= 2 && c2.size() >= 2 && rising(c1) != rising(c2)) {
    auto& drop = c1.size() >= c2.size() ? c1 : c2;
    drop.erase(drop.begin());
  }
  const std::size_t len = std::min(c1.size(), c2.size());
  c1.resize(len);
  c2.resize(len);
  TwinPair t{std::move(c1), std::move(c2)};
  if (len == 0 || !verify_weak_twins(p, t).valid || !detail::alternates(v, t.pos_a)) {
    throw InvariantFailure("construct_alternating_twins: result is not a pair of alternating twins");
  }
  return t;
}

/// Pattern classes available to pattern_census.
enum class CensusClass : std::uint8_t {
  lucky_six,
  lucky_six_a,
  lucky_six_b,
  lucky_six_c,
  lucky_six_d,
  cornered,
  crooked,
  extremal_middle,
};

inline std::optional<CensusClass> parse_census_class(std::string_view s) {
  if (s == "lucky6" || s == "lucky_six") return CensusClass::lucky_six;
  if (s == "lucky6a" || s == "lucky_six_a") return CensusClass::lucky_six_a;
  if (s == "lucky6b" || s == "lucky_six_b") return CensusClass::lucky_six_b;
  if (s == "lucky6c" || s == "lucky_six_c") return CensusClass::lucky_six_c;
  if (s == "lucky6d" || s == "lucky_six_d") return CensusClass::lucky_six_d;
  if (s == "cornered") return CensusClass::cornered;
  if (s == "crooked") return CensusClass::crooked;
  if (s == "extremal" || s == "extremal_middle") return CensusClass::extremal_middle;
  return std::nullopt;
}

/// Calls f(values) for every relative order of a window of the given length.
template <class F>
void for_each_window_order(std::size_t window, F&& f) {
  if (window > 8) throw SizeLimitExceeded("window above 8 is not supported");
  std::vector<int> w(window);
  std::iota(w.begin(), w.end(), 1);
  do {
    f(std::span<const int>(w));
  } while (std::next_permutation(w.begin(), w.end()));
}

namespace detail {

inline bool window_has(std::span<const int> w, CensusClass c) {
  auto any = [&](std::size_t len, auto pred) {
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
      if (pred(w.subspan(i, len))) return true;
    }
    return false;
  };
  auto lucky = [&](std::optional<PatternClass> want) {
    return any(6, [&](std::span<const int> s) {
      auto t = lucky_six_type(s);
      return t.has_value() && (!want || *t == *want);
    });
  };
  switch (c) {
    case CensusClass::lucky_six: return lucky(std::nullopt);
    case CensusClass::lucky_six_a: return lucky(PatternClass::lucky_six_a);
    case CensusClass::lucky_six_b: return lucky(PatternClass::lucky_six_b);
    case CensusClass::lucky_six_c: return lucky(PatternClass::lucky_six_c);
    case CensusClass::lucky_six_d: return lucky(PatternClass::lucky_six_d);
    case CensusClass::cornered: return any(5, [](std::span<const int> s) { return is_cornered(s); });
    case CensusClass::crooked: return any(5, [](std::span<const int> s) { return is_crooked(s); });
    case CensusClass::extremal_middle:
      return any(3, [](std::span<const int> s) { return (s[0] < s[1]) != (s[1] < s[2]); });
  }
  return false;
}

}  // namespace detail

/// Number of relative orders of a window that contain the pattern class.
/// With the window equal to the pattern length this is the count behind
/// its density.
inline std::size_t pattern_census(std::size_t window, CensusClass c) {
  std::size_t count = 0;
  for_each_window_order(window, [&](std::span<const int> w) { count += detail::window_has(w, c); });
  return count;
}

}  // namespace permutwin
