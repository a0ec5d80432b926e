#include "troplin/exact.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "troplin/assignment.hpp"
#include "troplin/core.hpp"

namespace troplin::exact {

namespace {

std::uint64_t micros_since(std::chrono::steady_clock::time_point t0) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count());
}

// Solves by the lifting scheme after normalizing; the safety net behind the
// Cramer-based paths.
SolveOutcome lifting_fallback(const TropMatrix& A) {
  const NormalizedSystem normalized = normalize_nonnegative(A);
  SolveOutcome out = lifting::solve_general_scheme(normalized.matrix,
                                                   lifting::Strategy::Optimized);
  if (out.feasible()) {
    out.solution = recover_solution(out.solution, normalized.col_adds);
  }
  return out;
}

SolveOutcome verified_or_fallback(const TropMatrix& A, SolutionVector x, Stats stats,
                                  const char* who) {
  SolveOutcome out;
  out.stats = stats;
  if (verify_solution(A, x)) {
    out.verdict = Verdict::Feasible;
    out.solution = std::move(x);
    out.stats.exit = InfeasibleExit::None;
    return out;
  }
  std::cerr << who << ": internal error: derived vector failed verification; "
            << "falling back to the lifting scheme\n";
  SolveOutcome fallback = lifting_fallback(A);
  fallback.stats.absorb(stats);
  return fallback;
}

}  // namespace

RowCover default_row_cover(std::size_t m, std::size_t n) {
  if (m <= n) {
    throw std::invalid_argument("default_row_cover: requires more rows than columns");
  }
  RowCover cover;
  cover.subsets.reserve(n + 1);
  std::vector<std::size_t> first_n(n);
  std::iota(first_n.begin(), first_n.end(), 0);
  cover.subsets.push_back(std::move(first_n));
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<std::size_t> subset;
    subset.reserve(m - 1);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != skip) subset.push_back(r);
    }
    cover.subsets.push_back(std::move(subset));
  }
  return cover;
}

void validate_cover(const RowCover& cover, std::size_t m, std::size_t n) {
  if (cover.subsets.size() != n + 1) {
    throw std::invalid_argument("row cover: need exactly n+1 subsets");
  }
  std::vector<std::size_t> coverage(m, 0);
  for (const auto& subset : cover.subsets) {
    if (subset.empty() || subset.size() >= m) {
      throw std::invalid_argument("row cover: subsets must be nonempty proper subsets");
    }
    std::vector<char> seen(m, 0);
    for (std::size_t r : subset) {
      if (r >= m) throw std::invalid_argument("row cover: row index out of range");
      if (seen[r]) throw std::invalid_argument("row cover: duplicate row in a subset");
      seen[r] = 1;
      ++coverage[r];
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (coverage[r] < n) {
      throw std::invalid_argument("row cover: a row is covered fewer than n times");
    }
  }
}

std::size_t MemoStore::KeyHash::operator()(const std::vector<std::uint32_t>& key) const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint32_t v : key) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

const MemoStore::Entry* MemoStore::find(const std::vector<std::uint32_t>& key) const {
  const auto it = map_.find(key);
  return it == map_.end() ? nullptr : &it->second;
}

void MemoStore::insert(std::vector<std::uint32_t> key, Entry entry) {
  map_.emplace(std::move(key), std::move(entry));
}

SolveOutcome solve_square(const TropMatrix& A) {
  if (!A.square()) {
    throw std::invalid_argument("solve_square: matrix must be square");
  }
  Stats stats;
  if (!assignment::is_singular(A, &stats)) {
    SolveOutcome out;
    out.verdict = Verdict::Infeasible;
    out.stats = stats;
    out.stats.exit = InfeasibleExit::Shape;
    return out;
  }
  // Two optimal matchings differ somewhere, so some row meets minimal
  // matchings in two or more cells; dropping it leaves a Cramer-solvable
  // system whose solution extends to the full matrix.
  const auto support = assignment::optimal_support(A, &stats);
  std::size_t drop = A.rows();
  for (std::size_t i = 0; i < A.rows() && drop == A.rows(); ++i) {
    std::size_t cells = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) cells += support[i][j];
    if (cells >= 2) drop = i;
  }
  if (drop == A.rows()) {
    std::cerr << "solve_square: internal error: singular matrix without a droppable row; "
              << "falling back to the lifting scheme\n";
    SolveOutcome fallback = lifting_fallback(A);
    fallback.stats.absorb(stats);
    return fallback;
  }
  SolutionVector x = assignment::cramer_solve(A.drop_row(drop), &stats);
  return verified_or_fallback(A, std::move(x), stats, "solve_square");
}

SolveOutcome solve_underdetermined(const TropMatrix& A) {
  if (A.rows() >= A.cols()) {
    throw std::invalid_argument("solve_underdetermined: requires fewer rows than columns");
  }
  Stats stats;
  SolutionVector x;
  if (A.rows() + 1 == A.cols()) {
    x = assignment::cramer_solve(A, &stats);
  } else {
    std::vector<Value> flat(A.entries().begin(), A.entries().end());
    const auto first_row = A.row(0);
    for (std::size_t extra = A.rows(); extra + 1 < A.cols(); ++extra) {
      flat.insert(flat.end(), first_row.begin(), first_row.end());
    }
    const TropMatrix padded(A.cols() - 1, A.cols(), std::move(flat));
    x = assignment::cramer_solve(padded, &stats);
  }
  SolveOutcome out = verified_or_fallback(A, std::move(x), stats, "solve_underdetermined");
  assert(out.feasible() && "underdetermined systems are always feasible");
  return out;
}

SolutionVector combine_subset_solutions(std::span<const SolutionVector> solutions,
                                        const TropMatrix& A, Stats* stats) {
  const std::size_t n = A.cols();
  if (solutions.size() != n + 1) {
    throw std::invalid_argument("combine_subset_solutions: need exactly n+1 solutions");
  }
  std::vector<Value> flat;
  flat.reserve((n + 1) * n);
  for (const auto& s : solutions) {
    if (s.size() != n) {
      throw std::invalid_argument("combine_subset_solutions: solution length mismatch");
    }
    flat.insert(flat.end(), s.begin(), s.end());
  }
  const TropMatrix stacked(n + 1, n, std::move(flat));
  const SolveOutcome alpha_outcome = solve_underdetermined(stacked.transposed());
  if (stats) stats->absorb(alpha_outcome.stats);
  if (!alpha_outcome.feasible()) {
    throw internal_error("combine_subset_solutions: transpose solve came back infeasible");
  }
  const SolutionVector& alpha = alpha_outcome.solution;

  SolutionVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    Value best = solutions[0][j] + alpha[0];
    for (std::size_t i = 1; i <= n; ++i) {
      best = trop_add(best, solutions[i][j] + alpha[i]);
    }
    x[j] = best;
  }
  if (!verify_solution(A, x)) {
    throw internal_error("combine_subset_solutions: combined vector failed verification");
  }
  return x;
}

namespace {

struct RecursionContext {
  const TropMatrix& root;
  MemoStore& memo;
  bool use_memo;
  Stats stats;
};

MemoStore::Entry solve_rows(RecursionContext& ctx, const std::vector<std::size_t>& rows,
                            const RowCover* cover_override) {
  ++ctx.stats.recursion_nodes;
  std::vector<std::uint32_t> key(rows.begin(), rows.end());
  if (ctx.use_memo) {
    if (const auto* hit = ctx.memo.find(key)) {
      ++ctx.stats.memo_hits;
      return *hit;
    }
  }

  const TropMatrix sub = ctx.root.select_rows(rows);
  const std::size_t n = ctx.root.cols();
  MemoStore::Entry entry;
  if (rows.size() <= n) {
    SolveOutcome outcome = rows.size() == n ? solve_square(sub) : solve_underdetermined(sub);
    ctx.stats.absorb(outcome.stats);
    entry.verdict = outcome.verdict;
    entry.solution = std::move(outcome.solution);
  } else {
    const RowCover cover =
        cover_override ? *cover_override : default_row_cover(rows.size(), n);
    validate_cover(cover, rows.size(), n);
    std::vector<SolutionVector> solutions;
    solutions.reserve(cover.subsets.size());
    bool infeasible = false;
    for (const auto& subset : cover.subsets) {
      std::vector<std::size_t> child_rows;
      child_rows.reserve(subset.size());
      for (std::size_t pos : subset) child_rows.push_back(rows[pos]);
      std::sort(child_rows.begin(), child_rows.end());
      MemoStore::Entry child = solve_rows(ctx, child_rows, nullptr);
      if (child.verdict == Verdict::Infeasible) {
        infeasible = true;
        break;
      }
      solutions.push_back(std::move(child.solution));
    }
    if (infeasible) {
      entry.verdict = Verdict::Infeasible;
    } else {
      entry.verdict = Verdict::Feasible;
      entry.solution = combine_subset_solutions(solutions, sub, &ctx.stats);
    }
  }

  if (ctx.use_memo) {
    ctx.memo.insert(std::move(key), entry);
  }
  return entry;
}

}  // namespace

SolveOutcome solve_overdetermined(const TropMatrix& A, MemoStore& memo,
                                  const ExactOptions& options) {
  if (A.rows() <= A.cols()) {
    throw std::invalid_argument("solve_overdetermined: requires more rows than columns");
  }
  const auto t0 = std::chrono::steady_clock::now();
  RecursionContext ctx{A, memo, options.use_memo, {}};
  std::vector<std::size_t> all_rows(A.rows());
  std::iota(all_rows.begin(), all_rows.end(), 0);
  MemoStore::Entry entry = solve_rows(ctx, all_rows, options.root_cover);

  SolveOutcome out;
  out.verdict = entry.verdict;
  out.solution = std::move(entry.solution);
  out.stats = ctx.stats;
  out.stats.exit = out.feasible() ? InfeasibleExit::None : InfeasibleExit::Shape;
  out.stats.wall_micros = micros_since(t0);
  return out;
}

SolveOutcome solve(const TropMatrix& A, Method method) {
  const auto t0 = std::chrono::steady_clock::now();
  const NormalizedSystem normalized = normalize_nonnegative(A);
  const TropMatrix& N = normalized.matrix;

  SolveOutcome out;
  if (method.kind == MethodKind::Lifting) {
    lifting::SchemeOptions scheme_options;
    scheme_options.guard_bound = method.guard_bound;
    out = lifting::solve_general_scheme(N, method.strategy, scheme_options);
  } else if (N.rows() < N.cols()) {
    out = solve_underdetermined(N);
  } else if (N.rows() == N.cols()) {
    out = solve_square(N);
  } else {
    MemoStore memo;
    out = solve_overdetermined(N, memo);
  }

  if (out.feasible()) {
    out.solution = recover_solution(out.solution, normalized.col_adds);
    if (!verify_solution(A, out.solution)) {
      throw internal_error("solve: recovered solution failed verification");
    }
  }
  out.stats.wall_micros = micros_since(t0);
  return out;
}

}  // namespace troplin::exact
