#include <cmath>

#include "stackcut/kernels.hpp"

namespace stackcut::kernels {
namespace {

std::uint64_t count_overlaps_against(double lo0, double hi0, std::span<const double> lo,
                                     std::span<const double> hi) {
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < lo.size(); ++j) count += endpoints_interleave(lo0, hi0, lo[j], hi[j]);
  return count;
}

void assign_colors(std::span<const double> centers, int k, double L, std::span<std::int32_t> out) {
  const double km1 = static_cast<double>(k - 1);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double c = centers[i];
    if (c == 1.0) {
      out[i] = k;
      continue;
    }
    const auto cell = static_cast<std::int64_t>(std::floor((km1 * c) / L));
    out[i] = static_cast<std::int32_t>(cell % k) + 1;
  }
}

std::uint64_t count_overlaps_at_distance(std::span<const double> len_a,
                                         std::span<const double> len_b, double distance) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < len_a.size(); ++i) {
    const double ha = 0.5 * len_a[i];
    const double hb = 0.5 * len_b[i];
    count += endpoints_interleave(0.0 - ha, 0.0 + ha, distance - hb, distance + hb);
  }
  return count;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", count_overlaps_against, assign_colors,
                                 count_overlaps_at_distance};
  return table;
}

}  // namespace stackcut::kernels
