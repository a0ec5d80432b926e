#pragma once

#include <cstddef>
#include <vector>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::assignment {

struct AssignmentResult {
  Value value = 0;
  std::vector<std::size_t> matching;  // matching[i] = column assigned to row i
};

// Minimum over all permutations s of sum_i A(i, s(i)), with a witnessing
// permutation. Exact integers, polynomial time (successive shortest path
// Hungarian with a post-hoc optimality certificate).
AssignmentResult tropical_permanent(const TropMatrix& A, Stats* stats = nullptr);

// Minimum assignment value among permutations forced through cell (i, j):
// A(i, j) plus the permanent of the minor with row i and column j deleted.
Value forced_value(const TropMatrix& A, std::size_t i, std::size_t j, Stats* stats = nullptr);

// True iff at least two distinct permutations attain the permanent's value.
// Decided via the tight subgraph of one optimal solution's duals: a second
// optimal matching exists iff the oriented tight graph has a directed cycle.
bool is_singular(const TropMatrix& A, Stats* stats = nullptr);

// support[i][j] == true iff cell (i, j) lies on some minimum-weight perfect
// matching, i.e. forced_value(A, i, j) == tropical_permanent(A).value.
std::vector<std::vector<bool>> optimal_support(const TropMatrix& A, Stats* stats = nullptr);

// For an (n-1) x n matrix: x[j] = permanent of A with column j deleted.
// The result solves the system; verified on every call in debug builds.
SolutionVector cramer_solve(const TropMatrix& A, Stats* stats = nullptr);

}  // namespace troplin::assignment
