#include "stackcut/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stackcut/analysis.hpp"
#include "stackcut/errors.hpp"
#include "stackcut/graph.hpp"
#include "stackcut/io.hpp"

namespace stackcut::cli {
namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output sink: a file when a path is given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

std::string percent(double v) {
  std::ostringstream s;
  s << std::showpos << std::fixed << std::setprecision(2) << 100.0 * v << '%';
  return s.str();
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
}

json result_json(const ResultRow& r, bool pass) {
  return json{{"k", r.k},
              {"L", r.L},
              {"mode", r.mode},
              {"n_or_trials", r.n_or_trials},
              {"seed", r.seed},
              {"estimate", r.estimate},
              {"reference", r.reference},
              {"relative_difference", r.relative_difference},
              {"stderr", r.stderr_},
              {"pass", pass}};
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::size_t n = 0;
  int k = 2;
  std::string L;  // empty: density support bound, else "paper"
  std::uint64_t seed = 0;
  std::string density;
  std::string out;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  ModelParams params;
  params.n = o.n;
  params.k = o.k;
  params.seed = o.seed;
  std::optional<LengthDensity> density;
  if (!o.density.empty()) density = load_density(o.density);
  if (!o.L.empty())
    params.L = parse_length_bound(o.L, o.k);
  else
    params.L = density ? density->support_max() : parse_length_bound("paper", o.k);
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto intervals =
      density ? generate_extended(params, *density) : generate_scheinerman(params);
  Sink sink(o.out, out);
  write_instance_csv(sink.get(), intervals);
  sink.finish();
  std::ostream& summary = sink.to_file() ? out : err;
  summary << "generated n=" << params.n << " k=" << params.k << " L=" << format_real(params.L)
          << " seed=" << params.seed << (density ? " model=extended" : " model=scheinerman")
          << " assumption=" << (params.assumption_holds() ? "holds" : "violated") << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct ColorOptions {
  std::string in;
  int k = 2;
  std::string L = "paper";
  std::string strategy = "oblivious";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_color(const ColorOptions& o, std::ostream& out, std::ostream&) {
  Strategy strategy;
  try {
    strategy = parse_strategy(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto instance = read_instance_csv(o.in);
  Coloring coloring;
  if (strategy == Strategy::oblivious) {
    const ColorRule rule(o.k, parse_length_bound(o.L, o.k));
    coloring = color_instance(instance.intervals, rule);
  } else {
    coloring = random_coloring(instance.intervals.size(), o.k, o.seed);
  }
  Sink sink(o.out, out);
  write_colored_csv(sink.get(), instance.intervals, coloring);
  sink.finish();
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct EvaluateOptions {
  std::string in;
  int k = 0;
  std::string format = "csv";
  std::string edges;
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream&) {
  check_format(o.format);
  auto instance = read_instance_csv(o.in);
  if (!instance.colors) throw UsageError(o.in + " has no color column");
  const auto& colors = *instance.colors;
  int k = o.k;
  if (k == 0) k = colors.empty() ? 1 : std::max(1, *std::max_element(colors.begin(), colors.end()));
  const Coloring coloring{colors, k};
  const CutStats stats = evaluate_cut(instance.intervals, coloring);

  if (!o.edges.empty()) {
    Sink edges(o.edges, out);
    write_edge_list(edges.get(), build_overlap_graph(instance.intervals));
    edges.finish();
  }

  Sink sink(o.out, out);
  const bool has_ratio = stats.m > 0;
  if (o.format == "json") {
    json doc{{"n", instance.intervals.size()},
             {"k", k},
             {"m", stats.m},
             {"cut", stats.cut},
             {"conflicts", stats.conflicts}};
    doc["ratio"] = has_ratio ? json(stats.ratio()) : json("NA");
    sink.get() << doc.dump(2) << '\n';
  } else {
    sink.get() << "n,k,m,cut,conflicts,ratio\n"
               << instance.intervals.size() << ',' << k << ',' << stats.m << ',' << stats.cut
               << ',' << stats.conflicts << ',' << (has_ratio ? format_real(stats.ratio()) : "NA")
               << '\n';
  }
  sink.finish();
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string target = "lemma2";
  std::vector<int> ks{5, 10, 20, 30};
  std::vector<std::string> Ls{"paper"};
  std::size_t n = 200000;
  std::string mode = "all-pairs";
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
  double threshold = 0.01;
  std::vector<double> xs{0.1, 1.0 / 3.0, 0.5, 0.8};
  std::string strategy = "oblivious";
  std::string density;
  std::string format = "csv";
  std::string out;
};

struct VerifyRow {
  ResultRow row;
  bool pass = false;
};

void emit_rows(const std::vector<VerifyRow>& rows, const VerifyOptions& o, std::ostream& out) {
  Sink sink(o.out, out);
  if (o.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) doc.push_back(result_json(r.row, r.pass));
    sink.get() << doc.dump(2) << '\n';
  } else {
    std::vector<ResultRow> plain;
    for (const auto& r : rows) plain.push_back(r.row);
    write_result_csv(sink.get(), plain);
  }
  sink.finish();
}

int verdict(const std::vector<VerifyRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; })
             ? kSuccess
             : kVerificationFailed;
}

int verify_lemma2(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  EstimatorConfig config;
  try {
    config.mode = parse_sampling_mode(o.mode);
    config.strategy = parse_strategy(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!o.density.empty()) config.density = load_density(o.density);
  config.trials = o.trials;
  config.workers = o.workers;
  std::vector<VerifyRow> rows;
  for (int k : o.ks) {
    for (const auto& Ltext : o.Ls) {
      const double L = parse_length_bound(Ltext, k);
      try {
        require_closed_form_scope(k, L);
      } catch (const std::invalid_argument& e) {
        throw UsageError("k=" + std::to_string(k) + ": " + e.what());
      }
      config.params = ModelParams{o.n, k, L, o.seed};
      const auto est = estimate_pair_probabilities(config);
      // The random baseline is compared against 1/k, the oblivious rule against the closed form.
      const double reference =
          config.strategy == Strategy::random ? 1.0 / k : p_sc_given_ov(k, L);
      auto r = est.p_sc_given_ov;
      r.with_reference(reference);
      const bool pass = std::abs(*r.relative_difference) <= o.threshold;
      const std::uint64_t size = config.mode == SamplingMode::all_pairs ? o.n : o.trials;
      rows.push_back({ResultRow{k, L, std::string(to_string(config.mode)), size, o.seed,
                                r.estimate, reference, *r.relative_difference, r.standard_error},
                      pass});
      err << "k=" << k << " L=" << fixed6(L) << " Pr(SC|OV) est=" << fixed6(r.estimate)
          << " ref=" << fixed6(reference) << " rel=" << percent(*r.relative_difference)
          << (pass ? " PASS" : " FAIL") << '\n';
    }
  }
  emit_rows(rows, o, out);
  return verdict(rows);
}

int verify_lemma1(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const int k = o.ks.empty() ? 5 : o.ks.front();
  const double L = parse_length_bound(o.Ls.empty() ? "paper" : o.Ls.front(), k);
  for (double x : o.xs) {
    if (!(x >= 0.0)) throw UsageError("--x values must be non-negative");
  }
  const auto checks = verify_lemma1_pointwise(o.xs, L, o.trials, o.seed);
  std::vector<VerifyRow> rows;
  for (const auto& c : checks) {
    rows.push_back({ResultRow{k, L, "lemma1@x=" + format_real(c.x), o.trials, o.seed,
                              c.result.estimate, c.reference,
                              c.result.relative_difference.value_or(0.0), c.result.standard_error},
                    c.pass});
    err << "x=" << fixed6(c.x) << " Pr(OV|C=xL) est=" << fixed6(c.result.estimate)
        << " ref=" << fixed6(c.reference) << " z=" << std::setprecision(3)
        << c.result.z_vs_reference() << (c.pass ? " PASS" : " FAIL") << '\n';
  }
  emit_rows(rows, o, out);
  return verdict(rows);
}

int verify_pov(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<VerifyRow> rows;
  for (int k : o.ks) {
    for (const auto& Ltext : o.Ls) {
      EstimatorConfig config;
      config.params = ModelParams{1, k, parse_length_bound(Ltext, k), o.seed};
      config.mode = SamplingMode::independent_pairs;
      config.trials = o.trials;
      config.workers = o.workers;
      const double L = config.params.L;
      auto r = estimate_pair_probabilities(config).p_ov;
      r.with_reference(p_ov(L));
      const bool pass = r.z_vs_reference() <= 3.0;
      rows.push_back({ResultRow{k, L, "independent-pairs", o.trials, o.seed, r.estimate,
                                *r.reference, *r.relative_difference, r.standard_error},
                      pass});
      err << "L=" << fixed6(L) << " Pr(OV) est=" << fixed6(r.estimate) << " ref=" << fixed6(p_ov(L))
          << " z=" << std::setprecision(3) << r.z_vs_reference() << (pass ? " PASS" : " FAIL")
          << '\n';
    }
  }
  emit_rows(rows, o, out);
  return verdict(rows);
}

int verify_theory(const VerifyOptions& o, std::ostream& out) {
  Sink sink(o.out, out);
  json doc = json::array();
  if (o.format == "csv")
    sink.get() << "k,L,p_si_given_sc,p_ov_given_sc,p_ov,p_sc_given_ov,expected_cut_ratio\n";
  for (int k : o.ks) {
    for (const auto& Ltext : o.Ls) {
      const double L = parse_length_bound(Ltext, k);
      try {
        require_closed_form_scope(k, L);
      } catch (const std::invalid_argument& e) {
        throw UsageError("k=" + std::to_string(k) + ": " + e.what());
      }
      if (o.format == "csv") {
        sink.get() << k << ',' << fixed6(L) << ',' << fixed6(p_si_given_sc(k, L)) << ','
                   << fixed6(p_ov_given_sc(k, L)) << ',' << fixed6(p_ov(L)) << ','
                   << fixed6(p_sc_given_ov(k, L)) << ',' << fixed6(expected_cut_ratio(k, L))
                   << '\n';
      } else {
        doc.push_back(json{{"k", k},
                           {"L", L},
                           {"p_si_given_sc", p_si_given_sc(k, L)},
                           {"p_ov_given_sc", p_ov_given_sc(k, L)},
                           {"p_ov", p_ov(L)},
                           {"p_sc_given_ov", p_sc_given_ov(k, L)},
                           {"expected_cut_ratio", expected_cut_ratio(k, L)}});
      }
    }
  }
  if (o.format == "json") sink.get() << doc.dump(2) << '\n';
  sink.finish();
  return kSuccess;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  check_format(o.format);
  if (o.workers == 0) throw UsageError("--workers must be positive");
  if (o.target == "lemma2") return verify_lemma2(o, out, err);
  if (o.target == "lemma1") return verify_lemma1(o, out, err);
  if (o.target == "pov") return verify_pov(o, out, err);
  if (o.target == "theory") return verify_theory(o, out);
  throw UsageError("unknown --target '" + o.target + "'");
}

// ---------------------------------------------------------------------------

struct MaxcutOptions {
  std::string in;
  int k = 3;
  std::string L = "paper";
  bool exact = false;
  bool greedy = false;
  std::string format = "csv";
  std::string out;
};

int cmd_maxcut(const MaxcutOptions& o, std::ostream& out, std::ostream& err) {
  check_format(o.format);
  if (o.k < 2) throw UsageError("--k must be at least 2");
  const auto instance = read_instance_csv(o.in);
  const std::size_t n = instance.intervals.size();
  if (o.exact && n > kExactSolverMaxVertices)
    throw UsageError("exact solver refuses n=" + std::to_string(n) + " (limit " +
                     std::to_string(kExactSolverMaxVertices) + ")");
  const bool run_greedy = o.greedy || !o.exact;
  const bool run_exact = o.exact || (!o.greedy && n <= kExactSolverMaxVertices);

  const OverlapGraph graph = build_overlap_graph(instance.intervals);
  json doc{{"n", n}, {"k", o.k}, {"m", graph.num_edges()}};
  if (run_exact) doc["exact"] = max_kcut_exact(graph, o.k).cut;
  if (run_greedy) doc["greedy"] = greedy_kcut(graph, o.k).cut;

  const bool centers_ok = std::all_of(instance.intervals.begin(), instance.intervals.end(),
                                      [](const Interval& iv) { return iv.center >= 0.0 && iv.center <= 1.0; });
  if (centers_ok) {
    const ColorRule rule(o.k, parse_length_bound(o.L, o.k));
    doc["oblivious"] = cut_size(graph, color_instance(instance.intervals, rule));
  } else {
    err << "oblivious cut skipped: centers outside [0, 1]\n";
  }

  Sink sink(o.out, out);
  if (o.format == "json") {
    sink.get() << doc.dump(2) << '\n';
  } else {
    const auto field = [&](const char* key) {
      return doc.contains(key) ? doc[key].dump() : std::string("NA");
    };
    sink.get() << "n,k,m,exact,greedy,oblivious\n"
               << n << ',' << o.k << ',' << graph.num_edges() << ',' << field("exact") << ','
               << field("greedy") << ',' << field("oblivious") << '\n';
  }
  sink.finish();
  return kSuccess;
}

}  // namespace

double parse_length_bound(const std::string& text, int k) {
  if (text == "paper") {
    if (k < 2) throw UsageError("--L paper needs --k >= 2");
    return paper_length_bound(k);
  }
  const auto slash = text.find('/');
  const auto parse = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw UsageError("cannot parse L '" + text + "'");
    return v;
  };
  const std::string_view view(text);
  const double L = slash == std::string::npos
                       ? parse(view)
                       : parse(view.substr(0, slash)) / parse(view.substr(slash + 1));
  if (!(L > 0.0 && L <= 1.0)) throw UsageError("L must lie in (0, 1], got '" + text + "'");
  return L;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oblivious stacking and MAX k-CUT on interval overlap graphs", "stackcut"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Draw a random instance (center,length CSV)");
  g->add_option("--n", gen.n, "Number of intervals")->required();
  g->add_option("--k", gen.k, "Number of colors (used by --L paper)");
  g->add_option("--L", gen.L,
                "Length bound: number, a/b, or 'paper' for (k-1)/(5k) (default: paper, or the "
                "density's support)");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--density", gen.density, "Piecewise-constant length density (JSON)");
  g->add_option("--out,-o", gen.out, "Output file (default stdout)");

  ColorOptions col;
  auto* c = app.add_subcommand("color", "Color an instance file");
  c->add_option("--in,input", col.in, "Instance CSV")->required();
  c->add_option("--k", col.k, "Number of colors");
  c->add_option("--L", col.L, "Length bound used by the oblivious rule");
  c->add_option("--strategy", col.strategy, "oblivious | random");
  c->add_option("--seed", col.seed, "Seed for --strategy random");
  c->add_option("--out,-o", col.out, "Output file (default stdout)");

  EvaluateOptions ev;
  auto* e = app.add_subcommand("evaluate", "Cut statistics of a colored instance");
  e->add_option("--in,input", ev.in, "Colored instance CSV")->required();
  e->add_option("--k", ev.k, "Number of colors (default: largest color present)");
  e->add_option("--format", ev.format, "csv | json");
  e->add_option("--edges", ev.edges, "Also write the overlap graph as an edge list");
  e->add_option("--out,-o", ev.out, "Output file (default stdout)");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Monte Carlo checks against the closed forms");
  v->add_option("--target", ver.target, "lemma2 | lemma1 | pov | theory");
  v->add_option("--k", ver.ks, "Color counts")->delimiter(',');
  v->add_option("--L", ver.Ls, "Length bounds ('paper' = (k-1)/(5k))")->delimiter(',');
  v->add_option("--n", ver.n, "Instance size for all-pairs mode");
  v->add_option("--mode", ver.mode, "all-pairs | independent-pairs");
  v->add_option("--trials", ver.trials, "Pairs drawn (independent-pairs, lemma1, pov)");
  v->add_option("--seed", ver.seed, "RNG seed");
  v->add_option("--workers", ver.workers, "Worker threads");
  v->add_option("--threshold", ver.threshold, "Max |relative difference| for lemma2");
  v->add_option("--x", ver.xs, "Center distances in units of L (lemma1)")->delimiter(',');
  v->add_option("--strategy", ver.strategy, "oblivious | random");
  v->add_option("--density", ver.density, "Length density JSON (extended model)");
  v->add_option("--format", ver.format, "csv | json");
  v->add_option("--out,-o", ver.out, "Output file (default stdout)");

  MaxcutOptions mc;
  auto* m = app.add_subcommand("maxcut", "Exact and greedy MAX k-CUT on an instance file");
  m->add_option("--in,input", mc.in, "Instance CSV")->required();
  m->add_option("--k", mc.k, "Number of colors");
  m->add_option("--L", mc.L, "Length bound for the oblivious comparison");
  m->add_flag("--exact", mc.exact, "Run the exact solver (n <= 16)");
  m->add_flag("--greedy", mc.greedy, "Run the greedy solver");
  m->add_option("--format", mc.format, "csv | json");
  m->add_option("--out,-o", mc.out, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*g) return cmd_generate(gen, out, err);
    if (*c) return cmd_color(col, out, err);
    if (*e) return cmd_evaluate(ev, out, err);
    if (*v) return cmd_verify(ver, out, err);
    if (*m) return cmd_maxcut(mc, out, err);
  } catch (const IoError& error) {
    err << "error: " << error.what() << '\n';
    return kIoError;
  } catch (const std::exception& error) {
    err << "error: " << error.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace stackcut::cli
