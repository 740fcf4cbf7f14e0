#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "stackcut/kernels.hpp"
#include "stackcut/rng.hpp"

using namespace stackcut;

namespace {

std::vector<const kernels::KernelTable*> simd_tables() {
  std::vector<const kernels::KernelTable*> out;
  if (const auto* t = kernels::avx2()) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("active kernel is available") {
  const auto& active = kernels::active();
  CHECK(active.name != nullptr);
  MESSAGE("active kernel: " << active.name);
#if defined(STACKCUT_WITH_AVX2)
  if (__builtin_cpu_supports("avx2") && std::getenv("STACKCUT_FORCE_SCALAR") == nullptr)
    CHECK(std::string(active.name) == "avx2");
#endif
}

TEST_CASE("count_overlaps_against agrees with scalar") {
  Rng rng(1);
  const auto& ref = kernels::scalar();
  for (const auto* simd : simd_tables()) {
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = rng.below(70);
      std::vector<double> lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        // Half the cases on a coarse lattice to exercise ties.
        if (t % 2 == 0) {
          lo[i] = static_cast<double>(rng.below(10));
          hi[i] = lo[i] + static_cast<double>(rng.below(5));
        } else {
          lo[i] = rng.uniform();
          hi[i] = lo[i] + 0.3 * rng.uniform();
        }
      }
      const double lo0 = t % 2 == 0 ? static_cast<double>(rng.below(10)) : rng.uniform();
      const double hi0 = lo0 + (t % 2 == 0 ? static_cast<double>(rng.below(5)) : 0.3 * rng.uniform());
      REQUIRE(simd->count_overlaps_against(lo0, hi0, lo, hi) == ref.count_overlaps_against(lo0, hi0, lo, hi));
    }
  }
}

TEST_CASE("assign_colors agrees with scalar bit for bit") {
  Rng rng(2);
  const auto& ref = kernels::scalar();
  for (const auto* simd : simd_tables()) {
    for (int k = 2; k <= 40; ++k) {
      for (int j = 1; j <= 7; ++j) {
        const double L = static_cast<double>(k - 1) / (j * k);
        const std::size_t n = 1 + rng.below(300);
        std::vector<double> centers(n);
        for (auto& c : centers) c = rng.uniform();
        // Boundary points and the clamped right end.
        centers[0] = 1.0;
        if (n > 2) centers[1] = 0.0;
        if (n > 3) centers[2] = L / (k - 1);
        if (n > 4) centers[3] = std::nextafter(1.0, 0.0);
        std::vector<std::int32_t> a(n), b(n);
        ref.assign_colors(centers, k, L, a);
        simd->assign_colors(centers, k, L, b);
        REQUIRE(a == b);
        for (auto c : a) REQUIRE((c >= 1 && c <= k));
        REQUIRE(a[0] == k);
      }
    }
  }
}

TEST_CASE("count_overlaps_at_distance agrees with scalar") {
  Rng rng(3);
  const auto& ref = kernels::scalar();
  for (const auto* simd : simd_tables()) {
    for (double x : {0.0, 0.1, 1.0 / 3.0, 0.5, 0.8, 1.0, 1.3}) {
      const std::size_t n = 10007;
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = 0.2 * rng.uniform();
        b[i] = 0.2 * rng.uniform();
      }
      REQUIRE(simd->count_overlaps_at_distance(a, b, 0.2 * x) == ref.count_overlaps_at_distance(a, b, 0.2 * x));
    }
  }
}

TEST_CASE("scalar kernels on hand-checked inputs") {
  const auto& k = kernels::scalar();
  const std::vector<double> lo{1, 0.5, 2, 0}, hi{3, 1.5, 3, 2};
  // Against [0, 2]: [1,3] overlaps, [0.5,1.5] contained, [2,3] touches, [0,2] identical.
  CHECK(k.count_overlaps_against(0, 2, lo, hi) == 1);
  std::vector<std::int32_t> out(3);
  k.assign_colors(std::vector<double>{0.1, 0.5, 1.0}, 3, 1.0 / 3.0, out);
  CHECK(out == std::vector<std::int32_t>{1, 1, 3});
  CHECK(k.count_overlaps_at_distance(std::vector<double>{2.0, 1.0}, std::vector<double>{2.0, 0.5}, 1.0) == 1);
}
