#include "stackcut/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stackcut/kernels.hpp"

namespace stackcut {

ColorRule::ColorRule(int k, double L) : k_(k), L_(L) {
  if (k < 2) throw std::invalid_argument("color rule needs k >= 2");
  if (!(L > 0.0 && L <= 1.0)) throw std::invalid_argument("color rule needs 0 < L <= 1");
  const double cells = (k - 1) / L;
  const double nearest = std::round(cells);
  num_cells_ = static_cast<std::int64_t>(
      std::abs(cells - nearest) <= kIntegralityTolerance * std::max(1.0, nearest) ? nearest
                                                                                  : std::ceil(cells));
}

std::int64_t ColorRule::cell_of(double center) const {
  if (!(center >= 0.0 && center <= 1.0)) throw std::out_of_range("center outside [0, 1]");
  if (center == 1.0) return num_cells_ - 1;
  return static_cast<std::int64_t>(std::floor((static_cast<double>(k_ - 1) * center) / L_));
}

void Coloring::validate() const {
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] < 1 || colors[i] > k)
      throw std::invalid_argument("color of interval " + std::to_string(i) + " outside [1, k]");
  }
}

Color assign_color(const Interval& interval, const ColorRule& rule) {
  if (interval.center == 1.0) return static_cast<Color>(rule.k());
  return rule.cell_color(rule.cell_of(interval.center));
}

Coloring color_instance(std::span<const Interval> intervals, const ColorRule& rule) {
  std::vector<double> centers(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double c = intervals[i].center;
    if (!(c >= 0.0 && c <= 1.0))
      throw std::out_of_range("interval " + std::to_string(i) + ": center outside [0, 1]");
    centers[i] = c;
  }
  Coloring out{std::vector<Color>(intervals.size()), rule.k()};
  kernels::active().assign_colors(centers, rule.k(), rule.L(), out.colors);
  return out;
}

Coloring random_coloring(std::size_t size, int k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("random coloring needs k >= 2");
  Coloring out{std::vector<Color>(size), k};
  for (auto& c : out.colors) c = static_cast<Color>(rng.below(static_cast<std::uint64_t>(k))) + 1;
  return out;
}

Coloring random_coloring(std::size_t size, int k, std::uint64_t seed) {
  Rng rng(seed);
  return random_coloring(size, k, rng);
}

}  // namespace stackcut
