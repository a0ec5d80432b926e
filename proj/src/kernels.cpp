#include "troplin/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace troplin::kernels {

namespace scalar {

MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n) {
  MinPair acc;
  if (x) {
    for (std::size_t j = 0; j < n; ++j) acc.absorb(a[j] + x[j]);
  } else {
    for (std::size_t j = 0; j < n; ++j) acc.absorb(a[j]);
  }
  return acc;
}

std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target) {
  std::size_t count = 0;
  if (x) {
    for (std::size_t j = 0; j < n; ++j) count += (a[j] + x[j] == target);
  } else {
    for (std::size_t j = 0; j < n; ++j) count += (a[j] == target);
  }
  return count;
}

std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor) {
  std::int64_t best = kAbsent;
  if (x) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = a[j] + x[j];
      if (v > floor && v < best) best = v;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[j] > floor && a[j] < best) best = a[j];
    }
  }
  return best;
}

}  // namespace scalar

namespace {

struct Table {
  Min2Fn min2;
  CountEqFn count_eq;
  MinAboveFn min_above;
  Backend backend;
};

constexpr Table kScalarTable{scalar::min2_offset, scalar::count_eq_offset,
                             scalar::min_above_offset, Backend::Scalar};

#if defined(TROPLIN_HAVE_AVX2)
constexpr Table kAvx2Table{avx2::min2_offset, avx2::count_eq_offset, avx2::min_above_offset,
                           Backend::Avx2};
#endif

Table pick_default() {
  const char* env = std::getenv("TROPLIN_KERNEL");
  if (env && std::strcmp(env, "scalar") == 0) return kScalarTable;
#if defined(TROPLIN_HAVE_AVX2)
  if (env && std::strcmp(env, "avx2") == 0) {
    if (!avx2_supported()) throw std::runtime_error("TROPLIN_KERNEL=avx2: CPU lacks AVX2");
    return kAvx2Table;
  }
  if (avx2_supported()) return kAvx2Table;
#else
  if (env && std::strcmp(env, "avx2") == 0) {
    throw std::runtime_error("TROPLIN_KERNEL=avx2: built without AVX2 support");
  }
#endif
  return kScalarTable;
}

Table& table() {
  static Table active = pick_default();
  return active;
}

}  // namespace

bool avx2_supported() {
#if defined(TROPLIN_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return table().backend; }

const char* backend_name() {
  return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

void set_backend(Backend backend) {
  if (backend == Backend::Scalar) {
    table() = kScalarTable;
    return;
  }
#if defined(TROPLIN_HAVE_AVX2)
  if (avx2_supported()) {
    table() = kAvx2Table;
    return;
  }
#endif
  throw std::invalid_argument("kernels::set_backend: AVX2 not available");
}

MinPair min2_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n) {
  return table().min2(a, x, n);
}

std::size_t count_eq_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                            std::int64_t target) {
  return table().count_eq(a, x, n, target);
}

std::int64_t min_above_offset(const std::int64_t* a, const std::int64_t* x, std::size_t n,
                              std::int64_t floor) {
  return table().min_above(a, x, n, floor);
}

}  // namespace troplin::kernels
