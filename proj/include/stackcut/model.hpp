#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackcut/errors.hpp"
#include "stackcut/rng.hpp"

namespace stackcut {

/// A storage-time interval kept as center and length; endpoints are derived.
struct Interval {
  double center = 0.0;
  double length = 0.0;

  double lo() const noexcept { return center - 0.5 * length; }
  double hi() const noexcept { return center + 0.5 * length; }

  /// Builds the interval [lo, hi]. Requires lo <= hi.
  static Interval from_endpoints(double lo, double hi);

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Parameters of a random instance: n intervals, k colors, lengths bounded by L.
struct ModelParams {
  std::size_t n = 0;
  int k = 2;
  double L = 1.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless n > 0, k >= 2 and 0 < L <= 1.
  void validate() const;

  /// True iff the integrality condition on (k, L) holds; see validate_assumption().
  bool assumption_holds() const;
};

/// Piecewise-constant length density on [0, L].
class LengthDensity {
 public:
  /// Validates edges (strictly increasing, first 0), heights (non-negative,
  /// one per bin) and unit mass within 1e-9. Throws std::invalid_argument.
  LengthDensity(std::vector<double> bin_edges, std::vector<double> bin_heights);

  /// Uniform density on [0, L].
  static LengthDensity uniform(double L);

  const std::vector<double>& bin_edges() const noexcept { return edges_; }
  const std::vector<double>& bin_heights() const noexcept { return heights_; }
  double bound() const noexcept { return bound_; }
  double support_max() const noexcept { return edges_.back(); }
  std::size_t num_bins() const noexcept { return heights_.size(); }

  /// Probability mass of bin i.
  double bin_mass(std::size_t i) const;

  /// Inverse CDF; u in [0, 1].
  double quantile(double u) const;

 private:
  std::vector<double> edges_;
  std::vector<double> heights_;
  std::vector<double> cdf_;  // cdf_[i] = mass of bins [0, i)
  double bound_ = 0.0;
};

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kIntegralityTolerance = 1e-9;

/// True iff 1 / ((k / (k-1)) * L) is within 1e-9 of an integer.
bool validate_assumption(int k, double L);

/// L = (k-1) / (5k), the family used for the reference simulations.
double paper_length_bound(int k);

/// Scheinerman instance: centers U[0,1], lengths U[0,L], all independent.
std::vector<Interval> generate_scheinerman(const ModelParams& params);
std::vector<Interval> generate_scheinerman(const ModelParams& params, Rng& rng);

/// Extended instance: centers U[0,1], lengths drawn from `density`.
std::vector<Interval> generate_extended(const ModelParams& params, const LengthDensity& density);
std::vector<Interval> generate_extended(const ModelParams& params, const LengthDensity& density,
                                        Rng& rng);

/// Reads {"bin_edges": [...], "bin_heights": [...]} from a JSON file.
LengthDensity load_density(const std::filesystem::path& path);
LengthDensity parse_density_json(const std::string& text);

}  // namespace stackcut
