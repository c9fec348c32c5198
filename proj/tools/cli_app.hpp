#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "permutwin/permutwin.hpp"

namespace permutwin::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailure = 1, kMalformed = 2, kSizeLimit = 3 };

struct Options {
  std::string perm;
  std::string file;
  std::optional<std::size_t> random_n;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double eta = 3.0;
  std::size_t n = 0;
  std::size_t max = 20;
  std::optional<std::size_t> cap;
  std::string format = "json";
  std::string out;
  std::string plot;
  std::string twins;
  std::string pos_a;
  std::string pos_b;
  std::string pattern_class;
  std::size_t window = 0;
  std::string predicate;
  std::string shape_text;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Permutation input_permutation(const Options& o) {
  const int given = !o.perm.empty() + !o.file.empty() + o.random_n.has_value();
  if (given != 1) throw MalformedInput("give exactly one of --perm, --file, --random");
  if (!o.perm.empty()) return Permutation::parse(o.perm);
  if (!o.file.empty()) {
    const std::string text = read_file(o.file);
    return Permutation::parse(text.substr(0, text.find('\n')));
  }
  if (*o.random_n == 0) throw MalformedInput("--random needs n >= 1");
  return random_permutation(*o.random_n, SeedSpec{o.seed, 0});
}

// One-based text form of an ascending position list.
inline std::string positions_text(const std::vector<std::size_t>& pos) {
  std::string s;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(pos[i] + 1);
  }
  return s;
}

inline std::vector<std::size_t> parse_positions(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw MalformedInput("not a position: '" + tok + "'");
    }
    if (used != tok.size() || v < 1) throw MalformedInput("not a position: '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

/// Certificate text: two lines of ascending one-based positions.
inline std::string certificate_text(const TwinPair& t) {
  return positions_text(t.pos_a) + "\n" + positions_text(t.pos_b) + "\n";
}

inline TwinPair parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string a, b;
  std::getline(in, a);
  std::getline(in, b);
  return TwinPair{parse_positions(a), parse_positions(b)};
}

inline std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& pos) {
  std::vector<std::size_t> out(pos);
  for (auto& p : out) ++p;
  return out;
}

inline std::string big(const BigCount& x) { return x.str(); }

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  bool text() const { return o_.format == "text"; }

  void emit(const Json& j, const std::string& plain) {
    if (text()) {
      out_ << plain << '\n';
    } else {
      out_ << j.dump() << '\n';
    }
  }

  int shape() {
    const Permutation p = input_permutation(o_);
    const std::string s = permutwin::shape(p).to_string();
    emit(Json{{"n", p.size()}, {"shape", s}}, s);
    return kOk;
  }

  int verify_twins() {
    const Permutation p = input_permutation(o_);
    TwinPair t;
    if (!o_.twins.empty()) {
      t = parse_certificate(read_file(o_.twins));
    } else {
      if (o_.pos_a.empty() || o_.pos_b.empty()) throw MalformedInput("give --twins FILE or both --a and --b");
      t = TwinPair{parse_positions(o_.pos_a), parse_positions(o_.pos_b)};
    }
    const TwinVerdict v = verify_weak_twins(p, t);
    Json j{{"valid", v.valid}};
    j["shape"] = v.common_shape ? Json(v.common_shape->to_string()) : Json(nullptr);
    j["length"] = v.valid ? t.length() : 0;
    emit(j, v.valid ? "valid " + v.common_shape->to_string() : "invalid");
    return v.valid ? kOk : kFailure;
  }

  int certificate(const Permutation& p, const TwinPair& t, Json extra) {
    const TwinVerdict v = verify_weak_twins(p, t);
    if (!v.valid) throw InvariantFailure("constructed twins failed verification");
    if (!o_.out.empty()) write_text_file(o_.out, certificate_text(t));
    Json j{{"n", p.size()}, {"length", t.length()}};
    for (auto& [k, val] : extra.items()) j[k] = val;
    j["shape"] = v.common_shape->to_string();
    j["pos_a"] = to_one_based(t.pos_a);
    j["pos_b"] = to_one_based(t.pos_b);
    std::string plain = certificate_text(t);
    plain.pop_back();
    emit(j, plain);
    return kOk;
  }

  int wt_construct() {
    const Permutation p = input_permutation(o_);
    const TwinPair split = twins_from_extremal_split(p);
    const TwinPair best = construct_weak_twins(p);
    return certificate(p, best, Json{{"method", best == split ? "extremal-split" : "gluing"}});
  }

  int wt_oracle() {
    const Permutation p = input_permutation(o_);
    const std::size_t w = permutwin::wt_oracle(p, o_.cap.value_or(14));
    emit(Json{{"n", p.size()}, {"wt", w}}, std::to_string(w));
    return kOk;
  }

  int hard_perm() {
    auto [p, spec] = hard_permutation(o_.n);
    Json j{{"n", spec.n}, {"k", spec.k}, {"k_prime", spec.k_prime}, {"x", spec.x},
           {"segment_lengths", spec.segment_lengths}, {"perm", p.to_string()}};
    emit(j, p.to_string());
    return kOk;
  }

  int alpha_construct() {
    const Permutation p = input_permutation(o_);
    const TwinPair t = construct_alternating_twins(p);
    const AltBoundReport b = alt_upper_bound(p);
    return certificate(p, t, Json{{"upper", b.upper}});
  }

  int alpha_oracle() {
    const Permutation p = input_permutation(o_);
    const std::size_t a = permutwin::alpha_oracle(p, o_.cap.value_or(14));
    const AltBoundReport b = alt_upper_bound(p);
    Json j{{"n", p.size()}, {"alpha", a}, {"e", b.e}, {"co", b.co}, {"cr", b.cr}, {"upper", b.upper}};
    emit(j, std::to_string(a));
    return kOk;
  }

  int detect() {
    const Permutation p = input_permutation(o_);
    Json hits = Json::array();
    std::string plain;
    auto add = [&](std::size_t start, const char* cls, std::size_t window) {
      hits.push_back(Json{{"start", start + 1}, {"class", cls}, {"window", window}});
      plain += std::to_string(start + 1) + " " + cls + "\n";
    };
    const std::string& c = o_.pattern_class;
    if (c == "extremal") {
      const auto ext = extremal_points(p);
      for (std::size_t i = 0; i < ext.count(); ++i) {
        add(ext.positions[i], ext.kinds[i] == ExtremalKind::maximal ? "maximal" : "minimal", 1);
      }
    } else {
      std::vector<PatternHit> found;
      if (c == "lucky6") found = find_lucky_sixes(p);
      else if (c == "cornered") found = find_cornered(p);
      else if (c == "crooked") found = find_crooked(p);
      else throw MalformedInput("unknown --class '" + c + "'");
      for (const auto& h : found) add(h.start, to_string(h.pattern_class), h.window);
    }
    if (!plain.empty()) plain.pop_back();
    emit(Json{{"n", p.size()}, {"count", hits.size()}, {"hits", hits}}, plain);
    return kOk;
  }

  int census() {
    const auto cls = parse_census_class(o_.pattern_class);
    if (!cls) throw MalformedInput("unknown --class '" + o_.pattern_class + "'");
    const std::size_t count = pattern_census(o_.window, *cls);
    std::uint64_t total = 1;
    for (std::size_t i = 2; i <= o_.window; ++i) total *= i;
    emit(Json{{"window", o_.window}, {"class", o_.pattern_class}, {"count", count}, {"total", total}},
         std::to_string(count) + "/" + std::to_string(total));
    return kOk;
  }

  int census_ext() {
    const auto preds = named_window_predicates();
    const auto it = preds.find(o_.predicate);
    if (it == preds.end()) {
      std::string names;
      for (const auto& [k, _] : preds) names += " " + k;
      throw MalformedInput("unknown --predicate '" + o_.predicate + "'; known:" + names);
    }
    const std::size_t count = extended_pattern_census(o_.window, it->second);
    emit(Json{{"window", o_.window}, {"predicate", o_.predicate}, {"count", count}}, std::to_string(count));
    return kOk;
  }

  int count_shape() {
    const Shape s = Shape::parse(o_.shape_text);
    const BigCount c = count_shape_dp(s);
    emit(Json{{"shape", s.to_string()}, {"n", s.size() + 1}, {"count", big(c)}}, big(c));
    return kOk;
  }

  int andre() {
    const auto a = andre_numbers(o_.max);
    Json vals = Json::array();
    std::string plain;
    PlotSeries series;
    for (std::size_t i = 0; i < a.size(); ++i) {
      vals.push_back(big(a[i]));
      plain += std::to_string(i) + " " + big(a[i]) + "\n";
      if (i >= 1) series.emplace_back(std::to_string(i), big(a[i]));
    }
    if (!o_.plot.empty()) emit_plot_data(series, o_.plot);
    plain.pop_back();
    emit(Json{{"max", o_.max}, {"A", vals}}, plain);
    return kOk;
  }

  int verify_identity() {
    const bool ok = verify_convolution_identity(o_.max);
    emit(Json{{"ok", ok}, {"from", 1}, {"max", o_.max}}, ok ? "ok" : "failed");
    return ok ? kOk : kFailure;
  }

  int verify_popular() {
    const PopularReport r = verify_most_popular(o_.n, default_worker_count());
    Json j{{"n", r.n}, {"ok", r.ok}, {"A_n", big(r.a_n)}, {"max_count", big(r.max_count)}};
    j["witness"] = r.witness ? Json(r.witness->to_string()) : Json(nullptr);
    j["max_nonalt"] = big(r.max_nonalt);
    j["max_nonalt_shape"] = r.max_nonalt_shape ? Json(r.max_nonalt_shape->to_string()) : Json(nullptr);
    emit(j, r.ok ? "ok" : "violated " + r.witness->to_string());
    return r.ok ? kOk : kFailure;
  }

  int simulate() {
    ExperimentConfig cfg;
    cfg.n = o_.n;
    cfg.trials = o_.trials;
    cfg.master_seed = o_.seed;
    cfg.eta = o_.eta;
    cfg.output_path = o_.out;
    const ExperimentResult res = run_experiment(cfg);
    if (!o_.plot.empty()) emit_plot_data(record_series(res.records, "alpha_len"), o_.plot);
    const Expectations ex = theoretical_expectations(cfg.n);
    Json fields = Json::object();
    for (const auto& f : res.summary.fields) {
      fields[f.field] = Json{{"mean", f.mean}, {"sd", f.sd}, {"min", f.min}, {"max", f.max}, {"tail_freq", f.tail_freq}};
    }
    Json theory{{"x", ex.x}, {"y", ex.y}, {"co", ex.l}, {"cr", ex.z}, {"e", ex.e},
                {"lower_constant", ex.lower_constant}, {"upper_constant", ex.upper_constant}};
    Json j{{"n", cfg.n}, {"trials", cfg.trials}, {"master_seed", cfg.master_seed}, {"eta", cfg.eta},
           {"threshold", res.summary.threshold}, {"fields", fields}, {"expected", theory}};
    if (res.records.size() >= 30) {
      Json conc = Json::object();
      for (const auto& e : concentration_report(res.records, cfg.eta).entries) {
        conc[e.field] = Json{{"tail_freq", e.tail_freq}, {"azuma_reference", e.azuma_reference}};
      }
      j["concentration"] = conc;
    }
    emit(j, summary_csv(res.summary).substr(0, summary_csv(res.summary).size() - 1));
    return kOk;
  }

  int count_t() {
    const BigCount t = count_perfect_twins(o_.n, o_.cap.value_or(10));
    emit(Json{{"n", o_.n}, {"T", big(t)}}, big(t));
    return kOk;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

/// Parses args (without the program name), runs the verb and returns the
/// exit status: 0 success, 1 operation failure, 2 malformed input,
/// 3 size limit.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak twins, alternating twins and shape counts of permutations", "permutwin"};
  app.require_subcommand(1);
  Options o;

  auto perm_input = [&](CLI::App* sub) {
    sub->add_option("--perm", o.perm, "permutation, e.g. \"6 1 4 3 7 9 8 2 5\"");
    sub->add_option("--file", o.file, "file whose first line holds the permutation");
    sub->add_option("--random", o.random_n, "uniform random permutation of this size");
    sub->add_option("--seed", o.seed, "seed for --random");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto verb = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    return sub;
  };

  auto* shape = verb("shape", "sign sequence of a permutation");
  perm_input(shape);
  auto* verify = verb("verify-twins", "check a twin certificate");
  perm_input(verify);
  verify->add_option("--twins", o.twins, "certificate file: two lines of one-based positions");
  verify->add_option("--a", o.pos_a, "one-based positions of twin A");
  verify->add_option("--b", o.pos_b, "one-based positions of twin B");
  auto* wtc = verb("wt-construct", "constructive weak twins");
  perm_input(wtc);
  wtc->add_option("--out", o.out, "also write the certificate here");
  auto* wto = verb("wt-oracle", "exact wt by exhaustive search");
  perm_input(wto);
  wto->add_option("--cap", o.cap, "refuse n above this (default 14)");
  auto* hard = verb("hard-perm", "adversarial permutation for the upper bound");
  hard->add_option("--n", o.n, "size (>= 8)")->required();
  auto* ac = verb("alpha-construct", "constructive alternating twins");
  perm_input(ac);
  ac->add_option("--out", o.out, "also write the certificate here");
  auto* ao = verb("alpha-oracle", "exact alpha by exhaustive search");
  perm_input(ao);
  ao->add_option("--cap", o.cap, "refuse n above this (default 14)");
  auto* det = verb("detect", "list pattern occurrences");
  perm_input(det);
  det->add_option("--class", o.pattern_class, "extremal, lucky6, cornered or crooked")->required();
  auto* cen = verb("census", "count window orders containing a pattern");
  cen->add_option("--window", o.window, "window length (<= 8)")->required();
  cen->add_option("--class", o.pattern_class, "lucky6, lucky6a..d, cornered, crooked or extremal")->required();
  auto* cex = verb("census-ext", "count window orders satisfying a named predicate");
  cex->add_option("--window", o.window, "window length (<= 8)")->required();
  cex->add_option("--predicate", o.predicate, "predicate name")->required();
  auto* cs = verb("count-shape", "number of permutations with a shape");
  cs->add_option("shape", o.shape_text, "shape over + and -")->required();
  auto* an = verb("andre", "zigzag numbers A_0..A_max");
  an->add_option("--max", o.max, "largest index");
  an->add_option("--plot", o.plot, "write \"n A_n\" lines here");
  auto* vi = verb("verify-identity", "check the zigzag convolution identity");
  vi->add_option("--max", o.max, "largest n");
  auto* vp = verb("verify-popular", "check that no shape beats the alternating one");
  vp->add_option("--n", o.n, "permutation size (<= 24)")->required();
  auto* sim = verb("simulate", "seeded Monte Carlo experiment");
  sim->add_option("--n", o.n, "permutation size (>= 8)")->required();
  sim->add_option("--trials", o.trials, "number of trials");
  sim->add_option("--seed", o.seed, "master seed");
  sim->add_option("--eta", o.eta, "tail threshold in units of sqrt(n)");
  sim->add_option("--out", o.out, "directory for records.jsonl, summary.csv, manifest.json");
  sim->add_option("--plot", o.plot, "write \"trial alpha_len/n\" lines here");
  auto* ct = verb("count-T", "permutations that split into two twins of length n/2");
  ct->add_option("--n", o.n, "even size")->required();
  ct->add_option("--cap", o.cap, "refuse n above this (default 10)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  Runner r(o, out);
  try {
    if (*shape) return r.shape();
    if (*verify) return r.verify_twins();
    if (*wtc) return r.wt_construct();
    if (*wto) return r.wt_oracle();
    if (*hard) return r.hard_perm();
    if (*ac) return r.alpha_construct();
    if (*ao) return r.alpha_oracle();
    if (*det) return r.detect();
    if (*cen) return r.census();
    if (*cex) return r.census_ext();
    if (*cs) return r.count_shape();
    if (*an) return r.andre();
    if (*vi) return r.verify_identity();
    if (*vp) return r.verify_popular();
    if (*sim) return r.simulate();
    if (*ct) return r.count_t();
  } catch (const SizeLimitExceeded& e) {
    err << "size limit: " << e.what() << '\n';
    return kSizeLimit;
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const PreconditionViolation& e) {
    err << "invalid arguments: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  err << app.help();
  return kMalformed;
}

}  // namespace permutwin::cli
