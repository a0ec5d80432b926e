#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin {

// x solves A iff in every row of A offset column-wise by x the minimum is
// attained at least twice.
bool verify_solution(const TropMatrix& A, std::span<const Value> x);

// Per-row bookkeeping for one row of the offset matrix A + x: the minimum,
// where it sits, and the gap to the next level. Every lifting strategy
// consumes this.
struct RowMinProfile {
  Value min = 0;
  std::size_t multiplicity = 0;
  std::vector<std::uint32_t> argmin_cols;
  std::optional<Value> second_distinct;  // absent iff the whole row equals min

  bool strict() const { return multiplicity == 1; }
};

RowMinProfile row_min_profile_row(const TropMatrix& A, std::span<const Value> x,
                                  std::size_t row);
std::vector<RowMinProfile> row_min_profile(const TropMatrix& A, std::span<const Value> x);

// A'[i][j] = A[i][j] + row_adds[i] + col_adds[j]. Feasibility-preserving.
TropMatrix apply_transform(const TropMatrix& A, std::span<const Value> row_adds,
                           std::span<const Value> col_adds);

struct NormalizedSystem {
  TropMatrix matrix;
  std::vector<Value> row_adds;
  std::vector<Value> col_adds;
};

// Subtracts each row's minimum from that row: entries become nonnegative
// with a zero in every row, and the solution set is untouched (row constants
// never affect which columns tie).
NormalizedSystem normalize_nonnegative(const TropMatrix& A);

// Maps a solution of apply_transform(A, r, col_adds) back to a solution of A.
SolutionVector recover_solution(std::span<const Value> x_transformed,
                                std::span<const Value> col_adds);

// Entrywise minimum of a nonempty list of equal-length rows.
SolutionVector tropical_row_sum(std::span<const SolutionVector> rows);

}  // namespace troplin
