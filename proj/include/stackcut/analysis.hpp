#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stackcut/coloring.hpp"
#include "stackcut/model.hpp"

namespace stackcut {

// ---------------------------------------------------------------------------
// Closed forms. Distances are in units of L unless stated otherwise. The
// conditional forms below are exact for k >= 3 with (k, L) satisfying
// validate_assumption(); they throw std::invalid_argument outside that scope.
// ---------------------------------------------------------------------------

/// Pr(two Scheinerman intervals overlap | center distance = x L).
/// 4x - 6x^2 on [0, 1/2], (2 - 2x)^2 / 2 on (1/2, 1], 0 beyond.
double p_ov_given_center(double x);

/// Density of |U - V| for U, V uniform on [0, a]: 2 (a - x) / a^2, 0 <= x <= a.
double distance_density(double x, double a);

/// Pr(same cell | same color) = k L / (k - 1).
double p_si_given_sc(int k, double L);

/// Pr(overlap | same color) = k L (4 / (3 (k-1)^2) - 1 / (k-1)^3).
double p_ov_given_sc(int k, double L);

/// Pr(overlap) = 2L/3 - L^2/4. Requires 0 < L <= 1.
double p_ov(double L);

/// Pr(same color | overlap) = 12 / (8 - 3L) (4 / (3 (k-1)^2) - 1 / (k-1)^3).
double p_sc_given_ov(int k, double L);

/// E|cut| / E(m) for the oblivious rule: 1 - p_sc_given_ov(k, L).
double expected_cut_ratio(int k, double L);

/// Upper bound L^2 B^2 p_ov_given_sc(k, L) for a length density bounded by B.
/// Requires B >= 1/L.
double extended_upper_bound_p_ov_given_sc(int k, double L, double B);

/// Throws std::invalid_argument unless k >= 3 and validate_assumption(k, L).
void require_closed_form_scope(int k, double L);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

/// Binomial proportion with its normal-approximation standard error.
struct EstimatorResult {
  double estimate = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;  ///< conditioning count for conditional probabilities
  double standard_error = 0.0;
  std::optional<double> reference;
  std::optional<double> relative_difference;  ///< (estimate - reference) / reference

  /// p = successes / trials. Throws UndefinedConditional when trials == 0.
  static EstimatorResult from_counts(std::uint64_t successes, std::uint64_t trials,
                                     std::string_view what = "proportion");

  EstimatorResult& with_reference(double ref);

  /// |estimate - reference| measured in standard errors of the reference
  /// proportion, sqrt(ref (1 - ref) / trials).
  double z_vs_reference() const;
};

/// Raw pair tallies. Merging is plain addition.
struct PairCounts {
  std::uint64_t pairs = 0;
  std::uint64_t overlapping = 0;
  std::uint64_t same_color = 0;
  std::uint64_t same_color_overlapping = 0;

  PairCounts& operator+=(const PairCounts& other) noexcept;
  friend PairCounts operator+(PairCounts a, const PairCounts& b) noexcept { return a += b; }
  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct PairEstimates {
  EstimatorResult p_ov;
  EstimatorResult p_sc;
  EstimatorResult p_sc_and_ov;
  EstimatorResult p_sc_given_ov;
  EstimatorResult p_ov_given_sc;
};

/// Throws UndefinedConditional if no overlapping or no same-color pair was seen.
PairEstimates estimates_from_counts(const PairCounts& counts);

enum class SamplingMode { all_pairs, independent_pairs };
enum class Strategy { oblivious, random };

std::string_view to_string(SamplingMode mode);
std::string_view to_string(Strategy strategy);
SamplingMode parse_sampling_mode(std::string_view text);
Strategy parse_strategy(std::string_view text);

struct EstimatorConfig {
  ModelParams params;                   ///< n intervals (all-pairs); k, L, seed
  std::optional<LengthDensity> density; ///< extended model when set
  Strategy strategy = Strategy::oblivious;
  SamplingMode mode = SamplingMode::all_pairs;
  std::uint64_t trials = 0;  ///< independent pairs drawn (independent-pairs mode)
  unsigned workers = 1;
};

/// Tallies plus the per-worker parts they were summed from.
struct PairCountRun {
  PairCounts total;
  std::vector<PairCounts> per_worker;
};

/// Samples are drawn in fixed-size blocks, block b from Rng(derive_seed(seed, b)),
/// and blocks are dealt round-robin to workers. In all-pairs mode the blocks
/// make up one n-interval instance whose pairs are then tallied with sweeps,
/// color classes split across workers. In independent-pairs mode each block
/// holds up to 65536 i.i.d. pairs. Totals depend on the seed only, not on
/// the worker count; per_worker depends on both.
PairCountRun count_pairs(const EstimatorConfig& config);

PairEstimates estimate_pair_probabilities(const EstimatorConfig& config);

struct PointwiseCheck {
  double x = 0.0;
  double reference = 0.0;
  EstimatorResult result;
  bool pass = false;  ///< within 3 reference standard errors
};

/// For each x, draws `trials` length pairs uniform on [0, L], places the
/// centers x L apart and counts overlaps.
std::vector<PointwiseCheck> verify_lemma1_pointwise(std::span<const double> xs, double L,
                                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace stackcut
