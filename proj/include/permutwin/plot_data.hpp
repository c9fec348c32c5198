#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "permutwin/errors.hpp"
#include "permutwin/montecarlo.hpp"

namespace permutwin {

/// One (x, y) pair per line, separated by a space. Values are kept as text
/// so exact integers pass through unchanged.
using PlotSeries = std::vector<std::pair<std::string, std::string>>;

inline std::string plot_text(const PlotSeries& series) {
  std::string out;
  for (const auto& [x, y] : series) out += x + " " + y + "\n";
  return out;
}

/// Writes the series to path. An empty series is rejected and no file is
/// created.
inline void emit_plot_data(const PlotSeries& series, const std::filesystem::path& path) {
  if (series.empty()) throw PreconditionViolation("emit_plot_data: empty series");
  write_text_file(path, plot_text(series));
}

/// trial index against field / n.
inline PlotSeries record_series(const std::vector<TrialRecord>& records, std::string_view field) {
  PlotSeries s;
  for (const auto& r : records) {
    s.emplace_back(std::to_string(r.trial_index),
                   format_double(static_cast<double>(record_field(r, field)) / static_cast<double>(r.n)));
  }
  return s;
}

}  // namespace permutwin
