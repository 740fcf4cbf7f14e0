#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the build and CPU allow, an AVX2 version that must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>

namespace stackcut::kernels {

/// Strict endpoint interleaving: alo < blo < ahi < bhi or blo < alo < bhi < ahi.
inline bool endpoints_interleave(double alo, double ahi, double blo, double bhi) noexcept {
  return (alo < blo && blo < ahi && ahi < bhi) || (blo < alo && alo < bhi && bhi < ahi);
}

struct KernelTable {
  const char* name;

  /// Number of j with [lo[j], hi[j]] overlapping [lo0, hi0]. Spans have equal size.
  std::uint64_t (*count_overlaps_against)(double lo0, double hi0, std::span<const double> lo,
                                          std::span<const double> hi);

  /// Oblivious colors for centers already known to lie in [0, 1]:
  /// floor((k-1) c / L) mod k + 1, with c == 1 mapped to k.
  void (*assign_colors)(std::span<const double> centers, int k, double L,
                        std::span<std::int32_t> out);

  /// Overlapping pairs among (interval centered at 0 with length len_a[i],
  /// interval centered at `distance` with length len_b[i]).
  std::uint64_t (*count_overlaps_at_distance)(std::span<const double> len_a,
                                              std::span<const double> len_b, double distance);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2();

/// Best table for this machine. STACKCUT_FORCE_SCALAR=1 in the environment pins scalar.
const KernelTable& active();

}  // namespace stackcut::kernels
