#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "permutwin/alternating.hpp"
#include "permutwin/errors.hpp"
#include "permutwin/extremal.hpp"
#include "permutwin/parallel.hpp"
#include "permutwin/permutation.hpp"
#include "permutwin/random.hpp"
#include "permutwin/shape_count.hpp"
#include "permutwin/twin_search.hpp"
#include "permutwin/version.hpp"
#include "permutwin/weak_twins.hpp"

namespace permutwin {

struct TrialRecord {
  std::size_t n = 0;
  std::uint64_t trial_index = 0;
  std::size_t e = 0;
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  std::size_t y1 = 0;
  std::size_t y2 = 0;
  std::size_t co = 0;
  std::size_t cr = 0;
  std::size_t wt_len = 0;
  std::size_t alpha_len = 0;
  std::size_t alpha_upper = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline constexpr std::array<std::string_view, 10> kRecordFields = {
    "e", "x1", "x2", "y1", "y2", "co", "cr", "wt_len", "alpha_len", "alpha_upper"};

inline std::size_t record_field(const TrialRecord& r, std::string_view name) {
  if (name == "e") return r.e;
  if (name == "x1") return r.x1;
  if (name == "x2") return r.x2;
  if (name == "y1") return r.y1;
  if (name == "y2") return r.y2;
  if (name == "co") return r.co;
  if (name == "cr") return r.cr;
  if (name == "wt_len") return r.wt_len;
  if (name == "alpha_len") return r.alpha_len;
  if (name == "alpha_upper") return r.alpha_upper;
  throw PreconditionViolation("unknown record field: " + std::string(name));
}

/// All statistics of one permutation. Halves split at floor(n/2); lucky
/// sixes are counted for window starts (one-based) in [1, n/2-3] and
/// [n/2-1, n-5], so the two windows straddling the middle are left out.
inline TrialRecord trial_record(const Permutation& p, std::uint64_t trial_index = 0) {
  const std::size_t n = p.size();
  if (n < 8) throw PreconditionViolation("trial_record: n must be at least 8");
  const auto v = p.values();
  const std::size_t h = n / 2;
  TrialRecord r;
  r.n = n;
  r.trial_index = trial_index;
  for (std::size_t i : extremal_positions(v)) {
    ++r.e;
    (i < h ? r.x1 : r.x2) += 1;
  }
  for (std::size_t i = 0; i + 6 <= n; ++i) {
    if (!lucky_six_type(v.subspan(i, 6))) continue;
    if (i + 4 <= h) ++r.y1;
    else if (i + 2 >= h) ++r.y2;
  }
  r.co = count_cornered(v);
  r.cr = count_crooked(v);
  r.wt_len = construct_weak_twins(p).length();
  r.alpha_len = construct_alternating_twins(p).length();
  r.alpha_upper = (r.e + r.co + r.cr) / 2;
  if (r.wt_len > n / 2 || r.x1 + r.x2 != r.e) throw InvariantFailure("trial_record: record invariant violated");
  return r;
}

inline TrialRecord run_trial(std::size_t n, SeedSpec seed) {
  if (n < 8) throw PreconditionViolation("run_trial: n must be at least 8");
  return trial_record(random_permutation(n, seed), seed.trial_index);
}

inline nlohmann::ordered_json to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["trial_index"] = r.trial_index;
  for (auto f : kRecordFields) j[std::string(f)] = record_field(r, f);
  return j;
}

inline TrialRecord record_from_json(const nlohmann::json& j) {
  TrialRecord r;
  r.n = j.at("n").get<std::size_t>();
  r.trial_index = j.at("trial_index").get<std::uint64_t>();
  r.e = j.at("e").get<std::size_t>();
  r.x1 = j.at("x1").get<std::size_t>();
  r.x2 = j.at("x2").get<std::size_t>();
  r.y1 = j.at("y1").get<std::size_t>();
  r.y2 = j.at("y2").get<std::size_t>();
  r.co = j.at("co").get<std::size_t>();
  r.cr = j.at("cr").get<std::size_t>();
  r.wt_len = j.at("wt_len").get<std::size_t>();
  r.alpha_len = j.at("alpha_len").get<std::size_t>();
  r.alpha_upper = j.at("alpha_upper").get<std::size_t>();
  return r;
}

struct FieldSummary {
  std::string field;
  double mean = 0;
  double sd = 0;
  double min = 0;
  double max = 0;
  double tail_freq = 0;  // fraction with |value - mean| >= eta * sqrt(n)
};

struct SummaryStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  double eta = 0;
  double threshold = 0;
  std::vector<FieldSummary> fields;

  const FieldSummary& at(std::string_view name) const {
    for (const auto& f : fields) {
      if (f.field == name) return f;
    }
    throw PreconditionViolation("unknown summary field: " + std::string(name));
  }
};

/// Per-field mean, sample standard deviation, range and tail frequency.
inline SummaryStats summarize(std::span<const TrialRecord> records, double eta) {
  if (records.empty()) throw PreconditionViolation("summarize: no records");
  SummaryStats s;
  s.n = records.front().n;
  s.trials = records.size();
  s.eta = eta;
  s.threshold = eta * std::sqrt(static_cast<double>(s.n));
  const double m = static_cast<double>(records.size());
  for (auto name : kRecordFields) {
    FieldSummary f;
    f.field = std::string(name);
    double sum = 0;
    f.min = f.max = static_cast<double>(record_field(records.front(), name));
    for (const auto& r : records) {
      const auto x = static_cast<double>(record_field(r, name));
      sum += x;
      f.min = std::min(f.min, x);
      f.max = std::max(f.max, x);
    }
    f.mean = sum / m;
    double ss = 0;
    std::size_t tail = 0;
    for (const auto& r : records) {
      const double d = static_cast<double>(record_field(r, name)) - f.mean;
      ss += d * d;
      if (std::abs(d) >= s.threshold) ++tail;
    }
    f.sd = records.size() > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
    f.tail_freq = static_cast<double>(tail) / m;
    s.fields.push_back(std::move(f));
  }
  return s;
}

struct ConcentrationEntry {
  std::string field;
  double tail_freq = 0;
  double azuma_reference = 0;  // 2 exp(-eta^2 / 2)
};

struct ConcentrationReport {
  double eta = 0;
  double threshold = 0;
  std::vector<ConcentrationEntry> entries;
};

inline ConcentrationReport concentration_report(std::span<const TrialRecord> records, double eta) {
  if (records.size() < 30) throw PreconditionViolation("concentration_report: at least 30 records are required");
  const SummaryStats s = summarize(records, eta);
  ConcentrationReport rep;
  rep.eta = eta;
  rep.threshold = s.threshold;
  const double ref = 2.0 * std::exp(-eta * eta / 2.0);
  for (const auto& f : s.fields) rep.entries.push_back({f.field, f.tail_freq, ref});
  return rep;
}

struct Expectations {
  double x = 0;      // E[X_j] = 1 + (n/2 - 1) * 2/3
  double y = 0;      // E[Y_j] = (n/2 - 3) / 30
  double l = 0;      // E[L] = (n - 4) * 8/60
  double z = 0;      // E[Z] = (n - 4) * 11/60
  double e = 0;      // E[e] = 2 + (n - 2) * 2/3
  double lower_constant = 21.0 / 60.0;
  double upper_constant = 59.0 / 120.0;
};

/// Exact for even n; for odd n the halves are floor(n/2) and the values are
/// approximate.
inline Expectations theoretical_expectations(std::size_t n) {
  if (n < 8) throw PreconditionViolation("theoretical_expectations: n must be at least 8");
  const double h = static_cast<double>(n / 2);
  const double nn = static_cast<double>(n);
  Expectations x;
  x.x = 1.0 + (h - 1.0) * 2.0 / 3.0;
  x.y = (h - 3.0) / 30.0;
  x.l = (nn - 4.0) * 8.0 / 60.0;
  x.z = (nn - 4.0) * 11.0 / 60.0;
  x.e = 2.0 + (nn - 2.0) * 2.0 / 3.0;
  return x;
}

struct ExperimentConfig {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  double eta = 3.0;
  std::filesystem::path output_path;  // directory; empty means nothing is written
  std::size_t workers = 0;            // 0: default_worker_count()
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  SummaryStats summary;
};

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string summary_csv(const SummaryStats& s) {
  std::string out = "field,mean,sd,min,max,tail_freq\n";
  for (const auto& f : s.fields) {
    out += f.field + "," + format_double(f.mean) + "," + format_double(f.sd) + "," + format_double(f.min) + "," +
           format_double(f.max) + "," + format_double(f.tail_freq) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json manifest_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json m;
  m["tool"] = "permutwin";
  m["version"] = kVersion;
  m["n"] = cfg.n;
  m["trials"] = cfg.trials;
  m["master_seed"] = cfg.master_seed;
  m["eta"] = cfg.eta;
  m["seed_schedule"] = "splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019)) -> mt19937_64";
  m["files"] = {"records.jsonl", "summary.csv"};
  return m;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write " + path.string());
}

/// Runs the trials (in parallel when allowed), then writes records.jsonl,
/// summary.csv and manifest.json under cfg.output_path. Records are ordered
/// by trial index and every output byte is independent of the worker count.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw PreconditionViolation("run_experiment: trials must be at least 1");
  if (cfg.n < 8) throw PreconditionViolation("run_experiment: n must be at least 8");
  if (!(cfg.eta > 0)) throw PreconditionViolation("run_experiment: eta must be positive");
  if (!cfg.output_path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_path, ec);
    if (ec || !std::filesystem::is_directory(cfg.output_path)) {
      throw std::runtime_error("cannot create output directory " + cfg.output_path.string());
    }
  }
  ExperimentResult res;
  res.records.resize(cfg.trials);
  const std::size_t workers = cfg.workers ? cfg.workers : default_worker_count();
  parallel_for(cfg.trials, workers, [&](std::size_t i) {
    res.records[i] = run_trial(cfg.n, SeedSpec{cfg.master_seed, i});
  });
  res.summary = summarize(res.records, cfg.eta);
  if (!cfg.output_path.empty()) {
    std::string lines;
    for (const auto& r : res.records) lines += to_json(r).dump() + "\n";
    write_text_file(cfg.output_path / "records.jsonl", lines);
    write_text_file(cfg.output_path / "summary.csv", summary_csv(res.summary));
    write_text_file(cfg.output_path / "manifest.json", manifest_json(cfg).dump(2) + "\n");
  }
  return res;
}

// Whether an n-permutation splits into two weak twins of length n/2,
// by assignment search.
inline bool splits_by_assignment(std::span<const int> v) {
  return detail::twins_of_length_exist<false>(v, v.size() / 2);
}

// The same question by listing the halves containing position 0.
inline bool splits_by_subsets(std::span<const int> v) {
  const std::size_t n = v.size();
  const std::size_t half = n / 2;
  std::vector<std::size_t> a, b;
  for (std::uint32_t mask = 1; mask < (1U << n); mask += 2) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != half) continue;
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1U ? a : b).push_back(i);
    if (detail::same_shape(v, a, b)) return true;
  }
  return false;
}

inline void check_perfect_args(std::size_t n, std::size_t cap) {
  if (n == 0 || n % 2 != 0) throw PreconditionViolation("count_perfect_twins: n must be even and positive");
  if (cap > 12) throw PreconditionViolation("count_perfect_twins: cap above 12 is not supported");
  if (n > cap) throw SizeLimitExceeded("count_perfect_twins: n exceeds cap");
}

inline BigCount count_perfect_twins_by_assignment(std::size_t n, std::size_t cap = 10) {
  check_perfect_args(n, cap);
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const Permutation& p) { count += splits_by_assignment(p.values()); });
  return BigCount(count);
}

inline BigCount count_perfect_twins_by_subsets(std::size_t n, std::size_t cap = 10) {
  check_perfect_args(n, cap);
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const Permutation& p) { count += splits_by_subsets(p.values()); });
  return BigCount(count);
}

/// T(n): n-permutations that split into two weak twins of length n/2.
/// Both strategies run per permutation and must agree.
inline BigCount count_perfect_twins(std::size_t n, std::size_t cap = 10) {
  check_perfect_args(n, cap);
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const Permutation& p) {
    const bool x = splits_by_assignment(p.values());
    if (x != splits_by_subsets(p.values())) {
      throw InvariantFailure("count_perfect_twins: strategies disagree on " + p.to_string());
    }
    count += x;
  });
  return BigCount(count);
}

using WindowPredicate = std::function<bool(std::span<const int>)>;

/// Number of relative orders of a window of the given length satisfying pred.
inline std::size_t extended_pattern_census(std::size_t window, const WindowPredicate& pred) {
  if (window > 8) throw SizeLimitExceeded("extended_pattern_census: window above 8");
  std::size_t count = 0;
  for_each_window_order(window, [&](std::span<const int> w) { count += pred(w) ? 1 : 0; });
  return count;
}

namespace detail {

inline bool has_shape(std::span<const int> w, std::string_view s) {
  if (w.size() != s.size() + 1) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((w[i] < w[i + 1]) != (s[i] == '+')) return false;
  }
  return true;
}

}  // namespace detail

/// Named predicates for the window census. The zigzag entries are candidate
/// 8-point structures: a fixed sign pattern plus one order constraint between
/// two outer points. Their counts are reported, not checked.
inline std::map<std::string, WindowPredicate, std::less<>> named_window_predicates() {
  std::map<std::string, WindowPredicate, std::less<>> m;
  m["false"] = [](std::span<const int>) { return false; };
  m["true"] = [](std::span<const int>) { return true; };
  m["lucky6"] = [](std::span<const int> w) { return lucky_six_type(w).has_value(); };
  m["lucky6a"] = [](std::span<const int> w) { return lucky_six_type(w) == PatternClass::lucky_six_a; };
  m["lucky6b"] = [](std::span<const int> w) { return lucky_six_type(w) == PatternClass::lucky_six_b; };
  m["lucky6c"] = [](std::span<const int> w) { return lucky_six_type(w) == PatternClass::lucky_six_c; };
  m["lucky6d"] = [](std::span<const int> w) { return lucky_six_type(w) == PatternClass::lucky_six_d; };
  m["cornered"] = [](std::span<const int> w) { return is_cornered(w); };
  m["crooked"] = [](std::span<const int> w) { return is_crooked(w); };
  m["zigzag-peak"] = [](std::span<const int> w) {
    return detail::has_shape(w, "+++-+--") && w[2] > w[6] && w[3] < w[5];
  };
  m["zigzag-rise"] = [](std::span<const int> w) {
    return detail::has_shape(w, "++-++--") && w[4] > w[6] && w[1] < w[3];
  };
  return m;
}

}  // namespace permutwin
