#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace troplin::kernels {

// Row-scan primitives over the offset row a[j] + x[j]. These are the inner
// loops of solution verification, strict-minimum detection and the oracle's
// grid enumeration. Each has a scalar reference implementation and an AVX2
// variant; the active one is picked at runtime (override with
// TROPLIN_KERNEL=scalar|avx2).
//
// x may be null, meaning an all-zero offset vector.

// Returned when a requested value does not exist (fewer than two elements,
// or no element above the floor). Never a legal sum: matrix construction
// caps magnitudes well below it.
inline constexpr std::int64_t kAbsent = std::numeric_limits<std::int64_t>::max();

// Two smallest values counted with multiplicity: lo is the minimum, second
// the second order statistic (== lo iff the minimum occurs at least twice).
struct MinPair {
  std::int64_t lo = kAbsent;
  std::int64_t second = kAbsent;

  void absorb(std::int64_t v) {
    if (v < lo) {
      second = lo;
      lo = v;
    } else if (v < second) {
      second = v;
    }
  }
};

using Min2Fn = MinPair (*)(const std::int64_t*, const std::int64_t*, std::size_t);
using CountEqFn = std::size_t (*)(const std::int64_t*, const std::int64_t*, std::size_t,
                                  std::int64_t);
using MinAboveFn = std::int64_t (*)(const std::int64_t*, const std::int64_t*, std::size_t,
                                    std::int64_t);

namespace scalar {
MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n);
std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target);
std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor);
}  // namespace scalar

#if defined(TROPLIN_HAVE_AVX2)
namespace avx2 {
MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n);
std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target);
std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor);
}  // namespace avx2
#endif

enum class Backend { Scalar, Avx2 };

bool avx2_supported();
Backend active_backend();
const char* backend_name();
// Throws std::invalid_argument if the backend is not available on this host.
void set_backend(Backend backend);

// Dispatching entry points.
MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n);
std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target);
std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor);

}  // namespace troplin::kernels
