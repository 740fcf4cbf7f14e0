#include "stackcut/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "stackcut/errors.hpp"
#include "stackcut/graph.hpp"
#include "stackcut/kernels.hpp"

namespace stackcut {
namespace {

// 4 / (3 (k-1)^2) - 1 / (k-1)^3, shared by the Lemma 2 family of formulas.
double cell_overlap_factor(int k) {
  const double km1 = k - 1;
  return 4.0 / (3.0 * km1 * km1) - 1.0 / (km1 * km1 * km1);
}

void require_length_bound(double L) {
  if (!(L > 0.0 && L <= 1.0)) throw std::invalid_argument("L must lie in (0, 1]");
}

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

template <typename Fn>
void run_workers(unsigned workers, Fn&& fn) {
  if (workers == 1) {
    fn(0u);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back([&fn, w] { fn(w); });
}

Interval draw_interval(Rng& rng, double L, const std::optional<LengthDensity>& density) {
  Interval iv;
  iv.center = rng.uniform();
  iv.length = density ? density->quantile(rng.uniform()) : L * rng.uniform();
  return iv;
}

void validate_config(const EstimatorConfig& config) {
  if (config.workers == 0) throw std::invalid_argument("workers must be positive");
  const ModelParams& p = config.params;
  if (p.k < 2) throw std::invalid_argument("k must be at least 2");
  require_length_bound(p.L);
  if (config.density && config.density->support_max() > p.L * (1.0 + 1e-12))
    throw std::invalid_argument("density support exceeds L");
  if (config.mode == SamplingMode::all_pairs) {
    p.validate();
  } else if (config.trials == 0) {
    throw std::invalid_argument("independent-pairs mode needs trials > 0");
  }
}

// Randomness is drawn per fixed-size block, block b from Rng(derive_seed(seed, b)),
// so the sample does not depend on how blocks are spread over workers.
constexpr std::size_t kIntervalBlock = 4096;
constexpr std::uint64_t kPairBlock = 1 << 16;

std::uint64_t num_blocks(std::uint64_t total, std::uint64_t block) { return (total + block - 1) / block; }

PairCountRun count_all_pairs(const EstimatorConfig& config) {
  const ModelParams& p = config.params;
  const unsigned workers = config.workers;
  const std::uint64_t blocks = num_blocks(p.n, kIntervalBlock);

  std::vector<Interval> intervals(p.n);
  std::vector<Color> colors(p.n);
  const ColorRule rule(p.k, p.L);
  run_workers(workers, [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      const std::size_t first = b * kIntervalBlock;
      const std::size_t last = std::min<std::size_t>(p.n, first + kIntervalBlock);
      Rng rng(derive_seed(p.seed, b));
      for (std::size_t i = first; i < last; ++i) intervals[i] = draw_interval(rng, p.L, config.density);
      if (config.strategy == Strategy::random) {
        for (std::size_t i = first; i < last; ++i)
          colors[i] = static_cast<Color>(rng.below(static_cast<std::uint64_t>(p.k))) + 1;
      } else {
        const auto part = std::span<const Interval>(intervals).subspan(first, last - first);
        const Coloring c = color_instance(part, rule);
        std::copy(c.colors.begin(), c.colors.end(), colors.begin() + static_cast<std::ptrdiff_t>(first));
      }
    }
  });

  std::vector<std::vector<std::uint32_t>> classes(static_cast<std::size_t>(p.k));
  for (std::uint32_t i = 0; i < p.n; ++i) classes[static_cast<std::size_t>(colors[i] - 1)].push_back(i);

  PairCountRun run;
  run.per_worker.assign(workers, PairCounts{});
  run_workers(workers, [&](unsigned w) {
    PairCounts& mine = run.per_worker[w];
    if (w == 0) {
      mine.pairs = choose2(p.n);
      mine.overlapping = count_overlapping_pairs(intervals);
    }
    for (std::size_t c = w; c < classes.size(); c += workers) {
      mine.same_color += choose2(classes[c].size());
      mine.same_color_overlapping += count_overlapping_pairs_among(intervals, classes[c]);
    }
  });
  for (const auto& part : run.per_worker) run.total += part;
  return run;
}

PairCountRun count_independent_pairs(const EstimatorConfig& config) {
  const ModelParams& p = config.params;
  const ColorRule rule(p.k, p.L);
  const std::uint64_t blocks = num_blocks(config.trials, kPairBlock);
  PairCountRun run;
  run.per_worker.assign(config.workers, PairCounts{});
  run_workers(config.workers, [&](unsigned w) {
    PairCounts& mine = run.per_worker[w];
    for (std::uint64_t b = w; b < blocks; b += config.workers) {
      Rng rng(derive_seed(p.seed, b));
      const std::uint64_t count = std::min(kPairBlock, config.trials - b * kPairBlock);
      mine.pairs += count;
      for (std::uint64_t t = 0; t < count; ++t) {
        const Interval a = draw_interval(rng, p.L, config.density);
        const Interval c = draw_interval(rng, p.L, config.density);
        bool same;
        if (config.strategy == Strategy::random) {
          const auto ca = rng.below(static_cast<std::uint64_t>(p.k));
          const auto cc = rng.below(static_cast<std::uint64_t>(p.k));
          same = ca == cc;
        } else {
          same = assign_color(a, rule) == assign_color(c, rule);
        }
        const bool ov = overlaps(a, c);
        mine.overlapping += ov;
        mine.same_color += same;
        mine.same_color_overlapping += ov && same;
      }
    }
  });
  for (const auto& part : run.per_worker) run.total += part;
  return run;
}

}  // namespace

double p_ov_given_center(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("center distance must be non-negative");
  if (x <= 0.5) return 4.0 * x - 6.0 * x * x;
  if (x <= 1.0) return 0.5 * (2.0 - 2.0 * x) * (2.0 - 2.0 * x);
  return 0.0;
}

double distance_density(double x, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("distance range must be positive");
  if (!(x >= 0.0 && x <= a)) throw std::out_of_range("distance outside [0, a]");
  return 2.0 / (a * a) * (a - x);
}

void require_closed_form_scope(int k, double L) {
  if (k < 3) throw std::invalid_argument("closed forms need k >= 3");
  require_length_bound(L);
  if (!validate_assumption(k, L))
    throw std::invalid_argument("(k, L) violates the integrality condition on L");
}

double p_si_given_sc(int k, double L) {
  require_closed_form_scope(k, L);
  return (static_cast<double>(k) / (k - 1)) * L;
}

double p_ov_given_sc(int k, double L) {
  require_closed_form_scope(k, L);
  return k * L * cell_overlap_factor(k);
}

double p_ov(double L) {
  require_length_bound(L);
  return 2.0 / 3.0 * L - 0.25 * L * L;
}

double p_sc_given_ov(int k, double L) {
  require_closed_form_scope(k, L);
  return 12.0 / (8.0 - 3.0 * L) * cell_overlap_factor(k);
}

double expected_cut_ratio(int k, double L) { return 1.0 - p_sc_given_ov(k, L); }

double extended_upper_bound_p_ov_given_sc(int k, double L, double B) {
  require_closed_form_scope(k, L);
  // Any density on [0, L] has supremum at least 1/L.
  if (!(B * L >= 1.0 - 1e-12)) throw std::invalid_argument("density bound B must be >= 1/L");
  return L * L * B * B * p_ov_given_sc(k, L);
}

EstimatorResult EstimatorResult::from_counts(std::uint64_t successes, std::uint64_t trials,
                                             std::string_view what) {
  if (trials == 0)
    throw UndefinedConditional(std::string(what) + " is undefined: conditioning count is zero");
  EstimatorResult r;
  r.successes = successes;
  r.trials = trials;
  r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
  return r;
}

EstimatorResult& EstimatorResult::with_reference(double ref) {
  reference = ref;
  if (ref != 0.0) relative_difference = (estimate - ref) / ref;
  return *this;
}

double EstimatorResult::z_vs_reference() const {
  if (!reference) throw std::logic_error("no reference value set");
  const double ref = *reference;
  const double sigma = std::sqrt(ref * (1.0 - ref) / static_cast<double>(trials));
  const double gap = std::abs(estimate - ref);
  if (sigma == 0.0) return gap == 0.0 ? 0.0 : INFINITY;
  return gap / sigma;
}

PairCounts& PairCounts::operator+=(const PairCounts& other) noexcept {
  pairs += other.pairs;
  overlapping += other.overlapping;
  same_color += other.same_color;
  same_color_overlapping += other.same_color_overlapping;
  return *this;
}

PairEstimates estimates_from_counts(const PairCounts& c) {
  return PairEstimates{
      EstimatorResult::from_counts(c.overlapping, c.pairs, "Pr(OV)"),
      EstimatorResult::from_counts(c.same_color, c.pairs, "Pr(SC)"),
      EstimatorResult::from_counts(c.same_color_overlapping, c.pairs, "Pr(SC and OV)"),
      EstimatorResult::from_counts(c.same_color_overlapping, c.overlapping, "Pr(SC | OV)"),
      EstimatorResult::from_counts(c.same_color_overlapping, c.same_color, "Pr(OV | SC)"),
  };
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::all_pairs ? "all-pairs" : "independent-pairs";
}

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::oblivious ? "oblivious" : "random";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "all-pairs") return SamplingMode::all_pairs;
  if (text == "independent-pairs") return SamplingMode::independent_pairs;
  throw std::invalid_argument("unknown sampling mode '" + std::string(text) + "'");
}

Strategy parse_strategy(std::string_view text) {
  if (text == "oblivious") return Strategy::oblivious;
  if (text == "random") return Strategy::random;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

PairCountRun count_pairs(const EstimatorConfig& config) {
  validate_config(config);
  return config.mode == SamplingMode::all_pairs ? count_all_pairs(config)
                                                : count_independent_pairs(config);
}

PairEstimates estimate_pair_probabilities(const EstimatorConfig& config) {
  return estimates_from_counts(count_pairs(config).total);
}

std::vector<PointwiseCheck> verify_lemma1_pointwise(std::span<const double> xs, double L,
                                                    std::uint64_t trials, std::uint64_t seed) {
  require_length_bound(L);
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  constexpr std::size_t kBlock = 4096;
  const auto& kernel = kernels::active();
  std::vector<double> len_a(kBlock), len_b(kBlock);
  std::vector<PointwiseCheck> out;
  out.reserve(xs.size());
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    const double x = xs[idx];
    PointwiseCheck check;
    check.x = x;
    check.reference = p_ov_given_center(x);
    Rng rng(derive_seed(seed, idx));
    const double distance = x * L;
    std::uint64_t hits = 0;
    for (std::uint64_t done = 0; done < trials;) {
      const std::size_t block = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, trials - done));
      for (std::size_t i = 0; i < block; ++i) {
        len_a[i] = L * rng.uniform();
        len_b[i] = L * rng.uniform();
      }
      hits += kernel.count_overlaps_at_distance(std::span<const double>(len_a).first(block),
                                                std::span<const double>(len_b).first(block), distance);
      done += block;
    }
    check.result = EstimatorResult::from_counts(hits, trials, "Pr(OV | C = xL)");
    check.result.with_reference(check.reference);
    check.pass = check.result.z_vs_reference() <= 3.0;
    out.push_back(check);
  }
  return out;
}

}  // namespace stackcut
