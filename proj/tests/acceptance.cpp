// Acceptance suite: one PASS/FAIL line per criterion. Run with criterion
// ids (c1 .. c9) to select, or without arguments for all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "oracles.hpp"
#include "permutwin/permutwin.hpp"

using namespace permutwin;
namespace fs = std::filesystem;

namespace {

std::ostream& note() { return std::cout << "    "; }

bool c1_shape_example() {
  const Permutation p = Permutation::parse("6 1 4 3 7 9 8 2 5");
  const std::string got = shape(p).to_string();
  note() << "shape(6 1 4 3 7 9 8 2 5) = " << got << " (expected -+-++--+)\n";
  return got == "-+-++--+";
}

bool c2_pattern_densities() {
  struct Row {
    const char* name;
    std::size_t window;
    CensusClass cls;
    std::size_t expected;
    std::size_t total;
  };
  const Row rows[] = {{"lucky six", 6, CensusClass::lucky_six, 24, 720},
                      {"cornered", 5, CensusClass::cornered, 16, 120},
                      {"crooked", 5, CensusClass::crooked, 22, 120},
                      {"extremal middle", 3, CensusClass::extremal_middle, 4, 6}};
  bool ok = true;
  for (const auto& r : rows) {
    const std::size_t got = pattern_census(r.window, r.cls);
    note() << r.name << ": " << got << "/" << r.total << " (expected " << r.expected << "/" << r.total << ")\n";
    ok = ok && got == r.expected;
  }
  return ok;
}

bool c3_alternating_pair_bound() {
  // |A| + |B| is maximised by 2 * alpha, so checking that value against
  // e + co + cr covers every pair of disjoint equal-shape alternating
  // subsequences.
  bool literal_ok = true;
  std::size_t literal_bad_from5 = 0;
  bool neighbour_ok = true;
  for (std::size_t n = 2; n <= 8; ++n) {
    std::size_t bad = 0, hosts = 0, worst = 0;
    std::string example;
    for_each_permutation(n, [&](const Permutation& p) {
      ++hosts;
      const std::size_t pair = 2 * alpha_oracle(p);
      const AltBoundReport b = alt_upper_bound(p);
      const std::size_t lhs_bound = b.e + b.co + b.cr;
      if (pair > lhs_bound) {
        ++bad;
        worst = std::max(worst, pair - lhs_bound);
        if (example.empty()) {
          example = "(" + p.to_string() + "): |A|+|B| = " + std::to_string(pair) + " > e+co+cr = " +
                    std::to_string(b.e) + "+" + std::to_string(b.co) + "+" + std::to_string(b.cr);
        }
      }
      if (pair > b.e + b.neighbours) neighbour_ok = false;
    });
    note() << "n=" << n << ": " << bad << "/" << hosts << " hosts exceed e+co+cr (max excess " << worst << ")"
           << (example.empty() ? "" : ", e.g. " + example) << "\n";
    if (bad) literal_ok = false;
    if (n >= 5) literal_bad_from5 += bad;
  }
  note() << "violations restricted to n >= 5: " << literal_bad_from5 << "\n";
  note() << "info: |A|+|B| <= e + #(non-extremal neighbours of extremal points) for all n <= 8: "
         << (neighbour_ok ? "holds" : "FAILS") << "\n";
  return literal_ok;
}

bool c4_weak_twin_construction() {
  bool ok = true;
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t hosts = 0, invalid = 0, short_ = 0, above = 0, min_len = n;
    const std::size_t floor_bound = n / 12 >= 2 ? n / 12 - 2 : 0;
    for_each_permutation(n, [&](const Permutation& p) {
      ++hosts;
      const TwinPair t = construct_weak_twins(p);
      if (!verify_weak_twins(p, t).valid) ++invalid;
      if (t.length() < floor_bound) ++short_;
      // length <= wt(p): an exact search must find twins of this length.
      if (!has_weak_twins(p, t.length(), 12)) ++above;
      min_len = std::min(min_len, t.length());
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    note() << "n=" << n << ": " << hosts << " hosts, invalid " << invalid << ", below bound " << short_
           << ", above wt " << above << ", min length " << min_len << " (" << secs << " s)\n";
    ok = ok && invalid == 0 && short_ == 0 && above == 0;
  }
  const std::size_t n = 240, trials = 10000;
  std::size_t invalid = 0, short_ = 0, min_len = n;
  for (std::size_t i = 0; i < trials; ++i) {
    const Permutation p = random_permutation(n, SeedSpec{0xACCE97, i});
    const TwinPair t = construct_weak_twins(p);
    if (!verify_weak_twins(p, t).valid) ++invalid;
    if (t.length() < n / 12 - 2) ++short_;
    min_len = std::min(min_len, t.length());
  }
  note() << "n=240: " << trials << " random hosts, invalid " << invalid << ", below " << n / 12 - 2 << ": " << short_
         << ", min length " << min_len << "\n";
  return ok && invalid == 0 && short_ == 0;
}

bool c5_hard_permutation() {
  bool ok = true;
  for (std::size_t n = 8; n <= 14; ++n) {
    auto [p, spec] = hard_permutation(n);
    const double threshold = static_cast<double>(n) / 2.0 - static_cast<double>(spec.k) / 3.0;
    const auto min_len = static_cast<std::size_t>(std::ceil(threshold));
    std::size_t pairs = 0, bad = 0;
    enumerate_weak_twins(p, min_len, [&](const TwinPair& t) {
      ++pairs;
      if (!verify_equal_intersections(p, t, spec)) ++bad;
    });
    note() << "n=" << n << ": k=" << spec.k << ", k'=" << spec.k_prime << ", pairs of length >= " << min_len << ": "
           << pairs << ", unequal intersections " << bad << (spec.k_prime == 1 ? " (k'=1: no block to compare)" : "")
           << "\n";
    ok = ok && bad == 0;
  }
  return ok;
}

bool c6_simulation_constants() {
  ExperimentConfig cfg;
  cfg.n = 3000;
  cfg.trials = 200;
  cfg.master_seed = 20240601;
  const ExperimentResult res = run_experiment(cfg);
  const SummaryStats& s = res.summary;
  const double n = 3000.0;
  bool ok = true;
  auto check = [&](const char* what, double value, double lo, double hi) {
    const bool pass = value >= lo && value <= hi;
    note() << what << " = " << value << " in [" << lo << ", " << hi << "]: " << (pass ? "yes" : "NO") << "\n";
    ok = ok && pass;
  };
  check("mean e/n", s.at("e").mean / n, 2.0 / 3.0 - 0.01, 2.0 / 3.0 + 0.01);
  check("mean Y_1", s.at("y1").mean, n / 60 * 0.9, n / 60 * 1.1);
  check("mean Y_2", s.at("y2").mean, n / 60 * 0.9, n / 60 * 1.1);
  check("mean co/n", s.at("co").mean / n, 8.0 / 60 * 0.95, 8.0 / 60 * 1.05);
  check("mean cr/n", s.at("cr").mean / n, 11.0 / 60 * 0.95, 11.0 / 60 * 1.05);
  check("mean alpha_upper/n", s.at("alpha_upper").mean / n, 59.0 / 120 - 0.005, 59.0 / 120 + 0.005);
  check("mean alpha_len/n", s.at("alpha_len").mean / n, 0.34, 1.0);
  std::size_t over = 0;
  for (const auto& r : res.records) over += r.alpha_len > r.alpha_upper;
  note() << "trials with alpha_len > alpha_upper: " << over << "\n";
  note() << "info: mean wt_len/n = " << s.at("wt_len").mean / n << "\n";
  return ok && over == 0;
}

bool c7_shape_counting() {
  bool ok = true;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    const std::size_t len = n - 1;
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
      const Shape s = Shape::from_bits(bits, len);
      const BigCount dp = count_shape_dp(s);
      if (dp != count_shape_recursive(s) || dp != brute_count_shape(s)) ok = false;
      ++checked;
    }
  }
  note() << "dp = recursive = brute on " << checked << " shapes, n <= 9: " << (ok ? "yes" : "NO") << "\n";

  const std::uint64_t want[] = {2, 5, 16};
  for (std::size_t n = 3; n <= 5; ++n) {
    const std::uint64_t brute = oracle::count_up_down(n);
    const BigCount a = andre_numbers(n)[n];
    note() << "A_" << n << ": brute " << brute << ", table " << a << "\n";
    ok = ok && brute == want[n - 3] && a == want[n - 3];
  }

  const bool identity = verify_convolution_identity(200);
  note() << "convolution identity for 1 <= n <= 200: " << (identity ? "holds" : "FAILS") << "\n";
  ok = ok && identity;

  bool sym = true, sums = true, popular = true;
  for (std::size_t n = 1; n <= 16; ++n) {
    const std::size_t len = n - 1;
    std::vector<SweepCount> counts(std::size_t{1} << len);
    for_each_shape_count(n, [&](std::uint64_t bits, SweepCount c) { counts[bits] = c; });
    SweepCount total = 0;
    const std::uint64_t mask = (std::uint64_t{1} << len) - 1;
    for (std::uint64_t b = 0; b <= mask; ++b) {
      total += counts[b];
      if (counts[b] != counts[~b & mask]) sym = false;
    }
    SweepCount fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    if (total != fact) sums = false;
    const PopularReport r = verify_most_popular(n);
    if (!r.ok) popular = false;
  }
  note() << "N(s) = N(complement s), n <= 16: " << (sym ? "yes" : "NO") << "\n";
  note() << "sum of N(s) = n!, n <= 16: " << (sums ? "yes" : "NO") << "\n";
  note() << "N(s) <= A_n for every shape, n <= 16: " << (popular ? "yes" : "NO") << "\n";
  return ok && sym && sums && popular;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool c8_determinism() {
  const fs::path base = fs::temp_directory_path() / ("permutwin_accept_" + std::to_string(::getpid()));
  bool ok = true;
  std::vector<std::string> outputs;
  for (std::size_t workers : {1, 2, 5}) {
    ExperimentConfig cfg;
    cfg.n = 300;
    cfg.trials = 60;
    cfg.master_seed = 77;
    cfg.workers = workers;
    cfg.output_path = base / ("w" + std::to_string(workers));
    run_experiment(cfg);
    outputs.push_back(slurp(cfg.output_path / "records.jsonl") + slurp(cfg.output_path / "summary.csv") +
                      slurp(cfg.output_path / "manifest.json"));
  }
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2] && !outputs[0].empty();
  note() << "experiment output identical for 1, 2 and 5 workers: " << (same ? "yes" : "NO") << "\n";
  ok = ok && same;

  std::size_t round_trips = 0, failures = 0;
  for (const char* verb : {"wt-construct", "alpha-construct"}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const fs::path cert = base / "cert.txt";
      std::ostringstream out, err;
      const std::string n = std::to_string(8 + seed * 7);
      int rc = cli::run_cli({verb, "--random", n, "--seed", std::to_string(seed), "--out", cert.string()}, out, err);
      std::ostringstream out2, err2;
      int rc2 = cli::run_cli({"verify-twins", "--random", n, "--seed", std::to_string(seed), "--twins", cert.string()},
                             out2, err2);
      ++round_trips;
      if (rc != 0 || rc2 != 0 || out2.str().find("\"valid\":true") == std::string::npos) ++failures;
    }
  }
  note() << "certificate round trips through verify-twins: " << round_trips - failures << "/" << round_trips << "\n";
  fs::remove_all(base);
  return ok && failures == 0;
}

bool c9_perfect_twins() {
  bool ok = true;
  for (std::size_t n : {2, 4, 6, 8}) {
    const BigCount a = count_perfect_twins_by_assignment(n);
    const BigCount b = count_perfect_twins_by_subsets(n);
    note() << "T(" << n << "): assignment " << a << ", subsets " << b << "\n";
    ok = ok && a == b;
    if (n == 2) ok = ok && a == 2;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::pair<std::string, std::function<bool()>>>> all = {
      {"c1", {"shape of the worked example", c1_shape_example}},
      {"c2", {"pattern densities 24/720, 16/120, 22/120, 4/6", c2_pattern_densities}},
      {"c3", {"|A|+|B| <= e+co+cr for all alternating twin pairs, n <= 8", c3_alternating_pair_bound}},
      {"c4", {"construct_weak_twins valid, >= floor(n/12)-2, <= wt (n <= 12; 10^4 at n=240)", c4_weak_twin_construction}},
      {"c5", {"hard permutation: long twins meet each block equally, n <= 14", c5_hard_permutation}},
      {"c6", {"simulation constants at n=3000, 200 trials", c6_simulation_constants}},
      {"c7", {"shape counting: three counters, A_n, identity, symmetry, popularity", c7_shape_counting}},
      {"c8", {"determinism across workers and certificate round trips", c8_determinism}},
      {"c9", {"T(n) dual-strategy agreement for n in {2,4,6,8}, T(2)=2", c9_perfect_twins}},
  };
  std::cout << std::unitbuf;
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [id, entry] : all) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = entry.second();
    } catch (const std::exception& e) {
      note() << "exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id.c_str(), entry.first.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
