#pragma once

#include <random>
#include <vector>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Value uniform(Value lo, Value hi) {
    return std::uniform_int_distribution<Value>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

inline TropMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n, Value max_entry,
                                Value min_entry = 0) {
  std::vector<Value> entries(m * n);
  for (auto& v : entries) v = rng.uniform(min_entry, max_entry);
  return TropMatrix(m, n, std::move(entries));
}

// Feasible by construction: every row's offset minimum under a planted
// vector is attained at two columns.
inline TropMatrix planted_feasible(Rng& rng, std::size_t m, std::size_t n, Value max_entry) {
  SolutionVector planted(n);
  for (auto& v : planted) v = rng.uniform(0, max_entry / 4);
  std::vector<Value> entries(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    Value* row = entries.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = rng.uniform(max_entry / 2, max_entry);
    std::size_t argmin = 0;
    Value lo = row[0] + planted[0];
    for (std::size_t j = 1; j < n; ++j) {
      if (row[j] + planted[j] < lo) {
        lo = row[j] + planted[j];
        argmin = j;
      }
    }
    std::size_t other = rng.index(n - 1);
    if (other >= argmin) ++other;
    row[other] = lo - planted[other];
  }
  return TropMatrix(m, n, std::move(entries));
}

}  // namespace troplin::test
