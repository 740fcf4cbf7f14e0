#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stackcut/model.hpp"
#include "stackcut/rng.hpp"

namespace stackcut {

using Color = std::int32_t;

/// Oblivious stacking rule: [0, 1] is cut into (k-1)/L cells of width
/// L/(k-1), colored 1, 2, ..., k, 1, 2, ... from the left. An interval takes
/// the color of the cell holding its center.
class ColorRule {
 public:
  /// Requires k >= 2 and 0 < L <= 1. The cell count is rounded to the nearest
  /// integer when the integrality condition holds, rounded up otherwise.
  ColorRule(int k, double L);

  int k() const noexcept { return k_; }
  double L() const noexcept { return L_; }
  std::int64_t num_cells() const noexcept { return num_cells_; }
  double cell_width() const noexcept { return L_ / (k_ - 1); }

  /// 0-based cell index of a center in [0, 1]; center 1 lands in the last cell.
  std::int64_t cell_of(double center) const;

  /// Color carried by 0-based cell i.
  Color cell_color(std::int64_t cell) const noexcept { return static_cast<Color>(cell % k_) + 1; }

 private:
  int k_;
  double L_;
  std::int64_t num_cells_;
};

/// One color per interval, each in [1, k].
struct Coloring {
  std::vector<Color> colors;
  int k = 2;

  std::size_t size() const noexcept { return colors.size(); }
  /// Throws std::invalid_argument if any color is outside [1, k].
  void validate() const;
};

/// Color of a single interval. Throws std::out_of_range for centers outside [0, 1].
Color assign_color(const Interval& interval, const ColorRule& rule);

/// Element-wise assign_color; reports the first offending index on error.
Coloring color_instance(std::span<const Interval> intervals, const ColorRule& rule);

/// Independent uniform colors; the baseline strategy. Requires k >= 2.
Coloring random_coloring(std::size_t size, int k, Rng& rng);
Coloring random_coloring(std::size_t size, int k, std::uint64_t seed);

}  // namespace stackcut
