#include "troplin/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "troplin/core.hpp"

namespace troplin::oracle {

Value default_max_coordinate(const TropMatrix& A) {
  return static_cast<Value>(A.cols() - 1) * A.max_entry() + 1;
}

OracleSolveResult oracle_solve(const TropMatrix& A, OracleConfig cfg) {
  if (A.min_entry() < 0) {
    throw std::invalid_argument("oracle_solve: matrix must be nonnegative (normalize first)");
  }
  const std::size_t n = A.cols();
  const Value bound = cfg.max_coordinate > 0 ? cfg.max_coordinate : default_max_coordinate(A);
  if (n > cfg.max_cols || bound > cfg.max_coordinate_limit) {
    throw std::length_error("oracle_solve: search space over budget, refusing");
  }

  OracleSolveResult result;
  SolutionVector x(n, 0);
  SolutionVector best;
  bool found = false;
  while (true) {
    bool dominated = found;
    if (found) {
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j] < best[j]) {
          dominated = false;
          break;
        }
      }
    }
    if (!dominated && verify_solution(A, x)) {
      if (!found) {
        best = x;
        found = true;
      } else {
        for (std::size_t j = 0; j < n; ++j) best[j] = trop_add(best[j], x[j]);
      }
    }
    // odometer increment
    std::size_t pos = 0;
    while (pos < n && x[pos] == bound) {
      x[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
    ++x[pos];
  }

  if (!found) {
    result.verdict = Verdict::Infeasible;
    return result;
  }
  result.verdict = Verdict::Feasible;
  result.minimal = std::move(best);
  result.boundary_hit =
      std::any_of(result.minimal.begin(), result.minimal.end(),
                  [&](Value v) { return v >= bound; });
  // The componentwise minimum of solutions must itself be a solution.
  if (!verify_solution(A, result.minimal)) {
    throw internal_error("oracle_solve: componentwise minimum of solutions is not a solution");
  }
  return result;
}

OraclePermanentResult oracle_permanent(const TropMatrix& A) {
  if (!A.square()) {
    throw std::invalid_argument("oracle_permanent: matrix must be square");
  }
  const std::size_t n = A.rows();
  if (n > 8) {
    throw std::length_error("oracle_permanent: n > 8 over budget, refusing");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  OraclePermanentResult result;
  bool first = true;
  do {
    Value total = 0;
    for (std::size_t i = 0; i < n; ++i) total += A(i, perm[i]);
    if (first || total < result.value) {
      result.value = total;
      result.optimal_count = 1;
      first = false;
    } else if (total == result.value) {
      ++result.optimal_count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

}  // namespace troplin::oracle
