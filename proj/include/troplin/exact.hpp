#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "troplin/lifting.hpp"
#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::exact {

// n+1 row subsets, each row covered at least n times. Feasibility of every
// subsystem implies feasibility of the whole system, and the subsystem
// solutions combine into a full solution.
struct RowCover {
  std::vector<std::vector<std::size_t>> subsets;
};

// The canonical cover: the first n rows, then all rows except the i-th for
// i = 1..n. Every row is covered exactly n times. Requires m > n.
RowCover default_row_cover(std::size_t m, std::size_t n);

// Throws std::invalid_argument unless the cover has n+1 subsets of valid row
// indices covering every row at least n times.
void validate_cover(const RowCover& cover, std::size_t m, std::size_t n);

// Subproblem cache keyed by sorted root-row-index sets. A hit returns a
// solution valid for exactly that row set.
class MemoStore {
 public:
  struct Entry {
    Verdict verdict = Verdict::Infeasible;
    SolutionVector solution;
  };

  const Entry* find(const std::vector<std::uint32_t>& key) const;
  void insert(std::vector<std::uint32_t> key, Entry entry);
  std::size_t size() const { return map_.size(); }
  void clear() { map_.clear(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  std::unordered_map<std::vector<std::uint32_t>, Entry, KeyHash> map_;
};

// Square systems: feasible iff tropically singular. When singular, drops a
// row meeting the minimal matchings in two or more cells and solves the rest
// by the Cramer rule; the result is verified against the full matrix.
SolveOutcome solve_square(const TropMatrix& A);

// m < n: always feasible. m == n-1 goes straight to the Cramer rule; wider
// systems first pad with copies of row 0 (duplicates add no constraint).
SolveOutcome solve_underdetermined(const TropMatrix& A);

// Subset-cover combinator: stack the subsystem solutions, solve the
// underdetermined transpose for per-row constants, and take the tropical sum
// of the shifted rows. solutions[i] must solve the i-th covering subsystem
// of a cover whose subsets each cover every row of A at least n times.
// Throws internal_error if the combined vector fails verification.
SolutionVector combine_subset_solutions(std::span<const SolutionVector> solutions,
                                        const TropMatrix& A, Stats* stats = nullptr);

struct ExactOptions {
  bool use_memo = true;
  // Optional custom cover for the root split (testing hook); recursion
  // below the root always uses the default cover.
  const RowCover* root_cover = nullptr;
};

// m > n: recurse over the cover's subsystems (square base case), combining
// solutions on the way up. Any infeasible subsystem proves the whole system
// infeasible. Results are memoized by root-row-index set.
SolveOutcome solve_overdetermined(const TropMatrix& A, MemoStore& memo,
                                  const ExactOptions& options = {});

enum class MethodKind { Auto, Lifting, Exact };

struct Method {
  MethodKind kind = MethodKind::Auto;
  lifting::Strategy strategy = lifting::Strategy::Optimized;
  // Guard-bound override for the lifting scheme (applies after
  // normalization); values below the default can misreport feasible
  // systems, values above only delay the infeasibility exit.
  std::optional<Value> guard_bound;
};

// Top-level entry: normalizes, dispatches by shape (or runs the lifting
// scheme when asked), maps the solution back to original coordinates and
// verifies it before returning.
SolveOutcome solve(const TropMatrix& A, Method method = {});

}  // namespace troplin::exact
