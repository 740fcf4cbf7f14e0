#include <immintrin.h>

#include <cmath>

#include "stackcut/kernels.hpp"

namespace stackcut::kernels {
namespace {

inline __m256d interleave_mask(__m256d alo, __m256d ahi, __m256d blo, __m256d bhi) {
  const __m256d left = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(alo, blo, _CMP_LT_OQ), _mm256_cmp_pd(blo, ahi, _CMP_LT_OQ)),
      _mm256_cmp_pd(ahi, bhi, _CMP_LT_OQ));
  const __m256d right = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(blo, alo, _CMP_LT_OQ), _mm256_cmp_pd(alo, bhi, _CMP_LT_OQ)),
      _mm256_cmp_pd(bhi, ahi, _CMP_LT_OQ));
  return _mm256_or_pd(left, right);
}

inline std::uint64_t lanes_set(__m256d mask) {
  return static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_pd(mask)));
}

std::uint64_t count_overlaps_against(double lo0, double hi0, std::span<const double> lo,
                                     std::span<const double> hi) {
  const __m256d alo = _mm256_set1_pd(lo0);
  const __m256d ahi = _mm256_set1_pd(hi0);
  std::uint64_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= lo.size(); j += 4) {
    const __m256d blo = _mm256_loadu_pd(lo.data() + j);
    const __m256d bhi = _mm256_loadu_pd(hi.data() + j);
    count += lanes_set(interleave_mask(alo, ahi, blo, bhi));
  }
  for (; j < lo.size(); ++j) count += endpoints_interleave(lo0, hi0, lo[j], hi[j]);
  return count;
}

void assign_colors(std::span<const double> centers, int k, double L, std::span<std::int32_t> out) {
  const double km1 = static_cast<double>(k - 1);
  const __m256d vkm1 = _mm256_set1_pd(km1);
  const __m256d vL = _mm256_set1_pd(L);
  const __m256d vk = _mm256_set1_pd(static_cast<double>(k));
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= centers.size(); i += 4) {
    const __m256d c = _mm256_loadu_pd(centers.data() + i);
    const __m256d cell = _mm256_floor_pd(_mm256_div_pd(_mm256_mul_pd(vkm1, c), vL));
    // cell and k are small exact integers, so cell / k floors exactly.
    const __m256d quotient = _mm256_floor_pd(_mm256_div_pd(cell, vk));
    __m256d color = _mm256_add_pd(_mm256_sub_pd(cell, _mm256_mul_pd(quotient, vk)), one);
    color = _mm256_blendv_pd(color, vk, _mm256_cmp_pd(c, one, _CMP_EQ_OQ));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvtpd_epi32(color));
  }
  for (; i < centers.size(); ++i) {
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
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d d = _mm256_set1_pd(distance);
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= len_a.size(); i += 4) {
    const __m256d ha = _mm256_mul_pd(half, _mm256_loadu_pd(len_a.data() + i));
    const __m256d hb = _mm256_mul_pd(half, _mm256_loadu_pd(len_b.data() + i));
    count += lanes_set(interleave_mask(_mm256_sub_pd(zero, ha), _mm256_add_pd(zero, ha),
                                       _mm256_sub_pd(d, hb), _mm256_add_pd(d, hb)));
  }
  for (; i < len_a.size(); ++i) {
    const double ha = 0.5 * len_a[i];
    const double hb = 0.5 * len_b[i];
    count += endpoints_interleave(0.0 - ha, 0.0 + ha, distance - hb, distance + hb);
  }
  return count;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", count_overlaps_against, assign_colors,
                                 count_overlaps_at_distance};
  return &table;
}

}  // namespace stackcut::kernels
