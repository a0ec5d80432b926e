#if defined(TROPLIN_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

#include "troplin/kernels.hpp"

namespace troplin::kernels::avx2 {

namespace {

inline __m256i min_epi64(__m256i a, __m256i b) {
  const __m256i gt = _mm256_cmpgt_epi64(a, b);
  return _mm256_blendv_epi8(a, b, gt);
}

inline std::int64_t hmin_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::int64_t best = lanes[0];
  for (int k = 1; k < 4; ++k) {
    if (lanes[k] < best) best = lanes[k];
  }
  return best;
}

template <bool HasOffset>
MinPair min2_impl(const std::int64_t* a, const std::int64_t* x, std::size_t n) {
  MinPair acc;
  std::size_t j = 0;
  if (n >= 8) {
    __m256i m1 = _mm256_set1_epi64x(kAbsent);
    __m256i m2 = _mm256_set1_epi64x(kAbsent);
    for (; j + 4 <= n; j += 4) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + j));
      if constexpr (HasOffset) {
        const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + j));
        v = _mm256_add_epi64(v, vx);
      }
      const __m256i gt = _mm256_cmpgt_epi64(m1, v);
      const __m256i bigger = _mm256_blendv_epi8(v, m1, gt);
      m1 = _mm256_blendv_epi8(m1, v, gt);
      m2 = min_epi64(m2, bigger);
    }
    alignas(32) std::int64_t lo_lanes[4];
    alignas(32) std::int64_t hi_lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lo_lanes), m1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(hi_lanes), m2);
    for (int k = 0; k < 4; ++k) acc.absorb(lo_lanes[k]);
    for (int k = 0; k < 4; ++k) {
      if (hi_lanes[k] != kAbsent) acc.absorb(hi_lanes[k]);
    }
  }
  for (; j < n; ++j) acc.absorb(HasOffset ? a[j] + x[j] : a[j]);
  return acc;
}

template <bool HasOffset>
std::size_t count_eq_impl(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                          std::int64_t target) {
  std::size_t count = 0;
  std::size_t j = 0;
  const __m256i t = _mm256_set1_epi64x(target);
  for (; j + 4 <= n; j += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + j));
    if constexpr (HasOffset) {
      const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + j));
      v = _mm256_add_epi64(v, vx);
    }
    const __m256i eq = _mm256_cmpeq_epi64(v, t);
    const int mask = _mm256_movemask_pd(_mm256_castsi256_pd(eq));
    count += std::popcount(static_cast<unsigned>(mask));
  }
  for (; j < n; ++j) count += ((HasOffset ? a[j] + x[j] : a[j]) == target);
  return count;
}

template <bool HasOffset>
std::int64_t min_above_impl(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t floor) {
  std::int64_t best = kAbsent;
  std::size_t j = 0;
  if (n >= 8) {
    const __m256i vfloor = _mm256_set1_epi64x(floor);
    const __m256i vabsent = _mm256_set1_epi64x(kAbsent);
    __m256i acc = vabsent;
    for (; j + 4 <= n; j += 4) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + j));
      if constexpr (HasOffset) {
        const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + j));
        v = _mm256_add_epi64(v, vx);
      }
      const __m256i above = _mm256_cmpgt_epi64(v, vfloor);
      acc = min_epi64(acc, _mm256_blendv_epi8(vabsent, v, above));
    }
    best = hmin_epi64(acc);
  }
  for (; j < n; ++j) {
    const std::int64_t v = HasOffset ? a[j] + x[j] : a[j];
    if (v > floor && v < best) best = v;
  }
  return best;
}

}  // namespace

MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n) {
  return x ? min2_impl<true>(a, x, n) : min2_impl<false>(a, nullptr, n);
}

std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target) {
  return x ? count_eq_impl<true>(a, x, n, target) : count_eq_impl<false>(a, nullptr, n, target);
}

std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor) {
  return x ? min_above_impl<true>(a, x, n, floor) : min_above_impl<false>(a, nullptr, n, floor);
}

}  // namespace troplin::kernels::avx2

#endif  // TROPLIN_HAVE_AVX2
