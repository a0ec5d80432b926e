#include "troplin/assignment.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

#include "troplin/core.hpp"

namespace troplin::assignment {

namespace {

constexpr Value kInf = std::numeric_limits<Value>::max();

// Successive-shortest-path assignment over a rows x cols cost grid
// (rows <= cols, all cells usable). Phase-callable: rows are inserted one
// augmentation at a time, and a snapshot/restore pair lets related solves
// (the column-deleted minors of the Cramer rule) warm-start from shared
// duals instead of solving from scratch.
//
// Internally 1-based; column 0 is the virtual root of each phase.
class AugmentingSolver {
 public:
  AugmentingSolver(const Value* cost, std::size_t rows, std::size_t cols)
      : cost_(cost),
        rows_(rows),
        cols_(cols),
        row_potential_(rows + 1, 0),
        col_potential_(cols + 1, 0),
        col_to_row_(cols + 1, 0) {}

  // Augments for 1-based row; allowed (1-based, may be null for "all")
  // restricts usable columns. The row must currently be unmatched.
  void augment(std::size_t row, const std::vector<char>* allowed) {
    minv_.assign(cols_ + 1, kInf);
    used_.assign(cols_ + 1, 0);
    way_.assign(cols_ + 1, 0);
    col_to_row_[0] = row;
    std::size_t j0 = 0;
    do {
      used_[j0] = 1;
      const std::size_t i0 = col_to_row_[j0];
      Value delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols_; ++j) {
        if (used_[j] || (allowed && !(*allowed)[j])) continue;
        const Value cur = cost_[(i0 - 1) * cols_ + (j - 1)] - row_potential_[i0] -
                          col_potential_[j];
        if (cur < minv_[j]) {
          minv_[j] = cur;
          way_[j] = j0;
        }
        if (minv_[j] < delta) {
          delta = minv_[j];
          j1 = j;
        }
      }
      if (j1 == 0) {
        throw internal_error("assignment: no reachable free column");
      }
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (used_[j]) {
          row_potential_[col_to_row_[j]] += delta;
          col_potential_[j] -= delta;
        } else if (minv_[j] != kInf) {
          minv_[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row_[j0] != 0);
    do {
      const std::size_t j1 = way_[j0];
      col_to_row_[j0] = col_to_row_[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::size_t matched_row(std::size_t col) const { return col_to_row_[col]; }
  void unmatch(std::size_t col) { col_to_row_[col] = 0; }

  Value matched_weight() const {
    Value total = 0;
    for (std::size_t j = 1; j <= cols_; ++j) {
      if (col_to_row_[j] != 0) total += cost_[(col_to_row_[j] - 1) * cols_ + (j - 1)];
    }
    return total;
  }

  std::vector<std::size_t> row_to_col() const {
    std::vector<std::size_t> match(rows_, cols_);
    for (std::size_t j = 1; j <= cols_; ++j) {
      if (col_to_row_[j] != 0) match[col_to_row_[j] - 1] = j - 1;
    }
    return match;
  }

  Value row_potential(std::size_t row) const { return row_potential_[row]; }
  Value col_potential(std::size_t col) const { return col_potential_[col]; }

  // Duality certificate: on allowed cells the reduced costs are nonnegative
  // and exactly zero on matched cells, which proves the current matching is
  // a minimum-weight perfect matching of the allowed subinstance.
  void certify(const std::vector<char>* allowed) const {
    for (std::size_t i = 1; i <= rows_; ++i) {
      for (std::size_t j = 1; j <= cols_; ++j) {
        if (allowed && !(*allowed)[j]) continue;
        const Value reduced = cost_[(i - 1) * cols_ + (j - 1)] - row_potential_[i] -
                              col_potential_[j];
        if (reduced < 0 || (col_to_row_[j] == i && reduced != 0)) {
          throw internal_error("assignment: dual certificate violated");
        }
      }
    }
  }

  struct Snapshot {
    std::vector<Value> row_potential;
    std::vector<Value> col_potential;
    std::vector<std::size_t> col_to_row;
  };
  Snapshot snapshot() const { return {row_potential_, col_potential_, col_to_row_}; }
  void restore(const Snapshot& s) {
    row_potential_ = s.row_potential;
    col_potential_ = s.col_potential;
    col_to_row_ = s.col_to_row;
  }

 private:
  const Value* cost_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Value> row_potential_;
  std::vector<Value> col_potential_;
  std::vector<std::size_t> col_to_row_;
  std::vector<Value> minv_;
  std::vector<char> used_;
  std::vector<std::size_t> way_;
};

struct SquareSolution {
  Value value = 0;
  std::vector<std::size_t> row_to_col;
  std::vector<Value> row_potential;  // feasible: u[i] + v[j] <= c(i, j)
  std::vector<Value> col_potential;  // tight on matched cells
};

SquareSolution solve_square_assignment(const Value* cost, std::size_t n, Stats* stats) {
  if (stats) ++stats->assignment_calls;
  SquareSolution out;
  if (n == 0) return out;
  AugmentingSolver solver(cost, n, n);
  for (std::size_t i = 1; i <= n; ++i) solver.augment(i, nullptr);
  solver.certify(nullptr);
  out.value = solver.matched_weight();
  out.row_to_col = solver.row_to_col();
  out.row_potential.resize(n);
  out.col_potential.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.row_potential[i] = solver.row_potential(i + 1);
  for (std::size_t j = 0; j < n; ++j) out.col_potential[j] = solver.col_potential(j + 1);
  return out;
}

SquareSolution solve_square_assignment(const TropMatrix& A, Stats* stats) {
  return solve_square_assignment(A.entries().data(), A.rows(), stats);
}

void require_square(const TropMatrix& A, const char* who) {
  if (!A.square()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

// Oriented tight graph of an optimal assignment: matched cells point column
// -> row, unmatched tight cells row -> column. A directed cycle corresponds
// exactly to a second minimum-weight matching.
struct TightGraph {
  std::size_t n;
  std::vector<std::vector<std::size_t>> row_out;  // row i -> columns
  std::vector<std::size_t> col_out;               // column j -> its matched row
};

TightGraph build_tight_graph(const TropMatrix& A, const SquareSolution& h) {
  const std::size_t n = A.rows();
  TightGraph g{n, std::vector<std::vector<std::size_t>>(n), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    g.col_out[h.row_to_col[i]] = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == h.row_to_col[i]) continue;
      if (A(i, j) == h.row_potential[i] + h.col_potential[j]) {
        g.row_out[i].push_back(j);
      }
    }
  }
  return g;
}

bool has_alternating_cycle(const TightGraph& g) {
  // DFS over row nodes; moving row -> col (unmatched tight) -> matched row.
  enum : char { White, Grey, Black };
  std::vector<char> color(g.n, White);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (row, next edge index)
  for (std::size_t start = 0; start < g.n; ++start) {
    if (color[start] != White) continue;
    color[start] = Grey;
    stack.emplace_back(start, 0);
    while (!stack.empty()) {
      auto& [row, edge] = stack.back();
      if (edge == g.row_out[row].size()) {
        color[row] = Black;
        stack.pop_back();
        continue;
      }
      const std::size_t next_row = g.col_out[g.row_out[row][edge]];
      ++edge;
      if (color[next_row] == Grey) return true;
      if (color[next_row] == White) {
        color[next_row] = Grey;
        stack.emplace_back(next_row, 0);
      }
    }
  }
  return false;
}

}  // namespace

AssignmentResult tropical_permanent(const TropMatrix& A, Stats* stats) {
  require_square(A, "tropical_permanent");
  const SquareSolution h = solve_square_assignment(A, stats);
  return {h.value, h.row_to_col};
}

Value forced_value(const TropMatrix& A, std::size_t i, std::size_t j, Stats* stats) {
  require_square(A, "forced_value");
  if (i >= A.rows() || j >= A.cols()) {
    throw std::out_of_range("forced_value: cell index out of range");
  }
  if (A.rows() == 1) return A(0, 0);
  const TropMatrix minor = A.drop_row(i).drop_col(j);
  return A(i, j) + solve_square_assignment(minor, stats).value;
}

bool is_singular(const TropMatrix& A, Stats* stats) {
  require_square(A, "is_singular");
  if (A.rows() == 1) return false;  // a single permutation can never tie
  const SquareSolution h = solve_square_assignment(A, stats);
  return has_alternating_cycle(build_tight_graph(A, h));
}

std::vector<std::vector<bool>> optimal_support(const TropMatrix& A, Stats* stats) {
  require_square(A, "optimal_support");
  const std::size_t n = A.rows();
  const SquareSolution h = solve_square_assignment(A, stats);
  std::vector<std::vector<bool>> support(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) support[i][h.row_to_col[i]] = true;
  if (n == 1) return support;

  const TightGraph g = build_tight_graph(A, h);
  // An unmatched tight cell (i, j) lies on an optimal matching iff the
  // alternating walk from column j can return to row i.
  std::vector<char> reachable(n);
  std::vector<std::size_t> queue;
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(reachable.begin(), reachable.end(), 0);
    queue.assign(1, g.col_out[j]);
    reachable[g.col_out[j]] = 1;
    while (!queue.empty()) {
      const std::size_t row = queue.back();
      queue.pop_back();
      for (std::size_t col : g.row_out[row]) {
        const std::size_t next_row = g.col_out[col];
        if (!reachable[next_row]) {
          reachable[next_row] = 1;
          queue.push_back(next_row);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == g.col_out[j]) continue;
      if (A(i, j) == h.row_potential[i] + h.col_potential[j] && reachable[i]) {
        support[i][j] = true;
      }
    }
  }
  return support;
}

SolutionVector cramer_solve(const TropMatrix& A, Stats* stats) {
  if (A.rows() + 1 != A.cols()) {
    throw std::invalid_argument("cramer_solve: need one more column than rows");
  }
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();

  // One rectangular solve saturating all rows leaves exactly one column
  // free; deleting that column costs nothing. Every other column-deleted
  // permanent is recovered by unmatching the column and re-augmenting its
  // row over the remaining columns, warm-started from the shared duals.
  // Each result carries its own optimality certificate.
  if (stats) ++stats->assignment_calls;
  AugmentingSolver solver(A.entries().data(), rows, cols);
  for (std::size_t i = 1; i <= rows; ++i) solver.augment(i, nullptr);

  std::size_t free_col = 0;
  for (std::size_t j = 1; j <= cols; ++j) {
    if (solver.matched_row(j) == 0) free_col = j;
  }
  SolutionVector x(cols);
  std::vector<char> allowed(cols + 1, 1);
  allowed[free_col] = 0;
  solver.certify(&allowed);
  x[free_col - 1] = solver.matched_weight();

  const AugmentingSolver::Snapshot base = solver.snapshot();
  for (std::size_t j = 1; j <= cols; ++j) {
    if (j == free_col) continue;
    if (stats) ++stats->assignment_calls;
    const std::size_t displaced_row = solver.matched_row(j);
    solver.unmatch(j);
    allowed[free_col] = 1;
    allowed[j] = 0;
    solver.augment(displaced_row, &allowed);
    solver.certify(&allowed);
    x[j - 1] = solver.matched_weight();
    allowed[j] = 1;
    allowed[free_col] = 0;
    solver.restore(base);
  }
  assert(verify_solution(A, x) && "cramer_solve: output failed verification");
  return x;
}

}  // namespace troplin::assignment
