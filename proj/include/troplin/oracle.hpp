#pragma once

#include <cstddef>
#include <optional>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::oracle {

// Brute-force ground truth. Deliberately obvious, deliberately slow; it
// exists to be checked against, not to be used.

struct OracleConfig {
  // Per-component grid bound, inclusive. 0 means pick the default
  // (cols - 1) * max_entry + 1, one past the bound any minimal solution of a
  // nonnegative system provably satisfies.
  Value max_coordinate = 0;
  // Refusal limits; raise them explicitly when a test really needs more.
  std::size_t max_cols = 5;
  Value max_coordinate_limit = 20;
};

struct OracleSolveResult {
  Verdict verdict = Verdict::Infeasible;
  SolutionVector minimal;  // componentwise minimum of all grid solutions
  // True if the minimal solution has a component equal to max_coordinate.
  // With the default grid this means the documented bound failed, which is
  // a bug; tests fail loudly on it.
  bool boundary_hit = false;
};

Value default_max_coordinate(const TropMatrix& A);

// Enumerates every x in {0..max_coordinate}^n over a nonnegative matrix.
// Throws std::invalid_argument on negative entries, std::length_error when
// the budget is exceeded (never silently truncates).
OracleSolveResult oracle_solve(const TropMatrix& A, OracleConfig cfg = {});

struct OraclePermanentResult {
  Value value = 0;
  std::size_t optimal_count = 0;
};

// Exact minimum and its multiplicity over all n! permutations; n <= 8.
OraclePermanentResult oracle_permanent(const TropMatrix& A);

}  // namespace troplin::oracle
