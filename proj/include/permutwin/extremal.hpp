#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permutwin/permutation.hpp"

namespace permutwin {

enum class ExtremalKind : std::uint8_t { maximal, minimal };

/// Local maxima and minima of a permutation, endpoints included. Positions
/// are zero-based and ascending; kinds alternate.
struct ExtremalAnalysis {
  std::vector<std::size_t> positions;
  std::vector<ExtremalKind> kinds;

  std::size_t count() const noexcept { return positions.size(); }
};

namespace detail {

inline bool is_extremal_at(std::span<const int> v, std::size_t i) {
  const std::size_t n = v.size();
  if (i == 0 || i + 1 == n) return true;
  return (v[i - 1] < v[i]) != (v[i] < v[i + 1]);
}

inline ExtremalKind kind_at(std::span<const int> v, std::size_t i) {
  const std::size_t n = v.size();
  if (n == 1) return ExtremalKind::maximal;
  if (i == 0) return v[0] > v[1] ? ExtremalKind::maximal : ExtremalKind::minimal;
  return v[i - 1] < v[i] ? ExtremalKind::maximal : ExtremalKind::minimal;
}

}  // namespace detail

/// Extremal positions of an arbitrary sequence of distinct values (zero-based).
inline std::vector<std::size_t> extremal_positions(std::span<const int> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (detail::is_extremal_at(values, i)) out.push_back(i);
  }
  return out;
}

inline ExtremalAnalysis extremal_points(const Permutation& p) {
  ExtremalAnalysis out;
  out.positions = extremal_positions(p.values());
  out.kinds.reserve(out.positions.size());
  for (std::size_t i : out.positions) out.kinds.push_back(detail::kind_at(p.values(), i));
  return out;
}

enum class Direction : std::uint8_t { increasing, decreasing };

/// Inclusive range of zero-based positions.
struct SegmentInterval {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const noexcept { return last - first + 1; }
  friend bool operator==(const SegmentInterval&, const SegmentInterval&) = default;
};

/// Monotone runs between consecutive extremal points. Segment i covers
/// [j_i, j_{i+1} - 1] and the last one is closed at n - 1, so the runs are
/// disjoint and their lengths sum to n.
struct SegmentDecomposition {
  std::vector<SegmentInterval> segments;
  std::vector<Direction> directions;

  std::size_t size() const noexcept { return segments.size(); }
};

inline SegmentDecomposition decompose_segments(const Permutation& p) {
  const auto v = p.values();
  const std::size_t n = v.size();
  const auto ext = extremal_positions(v);
  SegmentDecomposition out;
  if (n == 1) {
    out.segments.push_back({0, 0});
    out.directions.push_back(Direction::increasing);
    return out;
  }
  // The last extremal point is n - 1 and closes the final run.
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    const std::size_t first = ext[i];
    const std::size_t last = (i + 2 == ext.size()) ? n - 1 : ext[i + 1] - 1;
    out.segments.push_back({first, last});
    out.directions.push_back(v[first] < v[first + 1] ? Direction::increasing : Direction::decreasing);
  }
  return out;
}

}  // namespace permutwin
