#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::lifting {

// The lifting scheme keeps the matrix immutable and accumulates per-column
// additions; the offset matrix A + additions is the current working view
// and the additions vector is the running solution candidate.
struct LiftState {
  std::vector<Value> additions;
  std::vector<char> touched;  // touched[j] iff column j was ever lifted
  std::size_t touched_count = 0;
  std::uint64_t lifts = 0;

  explicit LiftState(std::size_t cols) : additions(cols, 0), touched(cols, 0) {}

  void apply(std::span<const Value> increment) {
    for (std::size_t j = 0; j < additions.size(); ++j) {
      if (increment[j] > 0) {
        additions[j] += increment[j];
        if (!touched[j]) {
          touched[j] = 1;
          ++touched_count;
        }
      }
    }
    ++lifts;
  }
};

enum class Strategy {
  Original,     // per-row recursion, closure seeded from the strict row
  Optimized,    // no recursion, closure absorbs every strict column
  Agg,          // lift each strict column by its own gap
  CombinedMax,  // per-column max of Optimized and Agg proposals
  CombinedMin,  // per-column min of Optimized and Agg proposals
};

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);
inline constexpr Strategy kAllStrategies[] = {Strategy::Original, Strategy::Optimized,
                                              Strategy::Agg, Strategy::CombinedMax,
                                              Strategy::CombinedMin};

using Increment = std::vector<Value>;

// The unique maximal column set containing seed and closed under: while some
// row of the offset matrix has exactly one of its minimum positions outside
// the set, absorb that position's column. Returns a membership mask.
std::vector<char> closure_columns(const TropMatrix& A, const LiftState& state,
                                  std::span<const std::size_t> seed);

// Closure seeded empty; lift every closure column by the largest amount that
// keeps each row's minimal positions minimal. nullopt when the closure
// swallows every column (the instance is infeasible).
std::optional<Increment> lift_closure_optimized(const TropMatrix& A, const LiftState& state);

// Same lift, but the closure is seeded with the strict row's minimum column
// and only rows from strict_row down take part (the per-row recursion works
// bottom-up, so the rows above the strict row are not yet in play).
std::optional<Increment> lift_closure_original(const TropMatrix& A, const LiftState& state,
                                                 std::size_t strict_row);

// Per column: the largest gap to the second level among rows whose strict
// minimum sits in that column. Never impossible.
Increment lift_agg(const TropMatrix& A, const LiftState& state);

enum class CombineMode { Max, Min };

std::optional<Increment> lift_combined(const TropMatrix& A, const LiftState& state,
                                       CombineMode mode);

// Guard on cumulative additions: one past (n-1) * M, which bounds every
// minimal nonnegative solution of a nonnegative system. Exceeding it
// certifies infeasibility.
Value default_guard_bound(const TropMatrix& A);

struct SchemeOptions {
  std::optional<Value> guard_bound;
  // Called after every applied lift; used by instrumented tests to check
  // the safety invariant (additions never exceed the minimal solution).
  std::function<void(const LiftState&)> on_lift;
};

// The general scheme: lift while some row has a strict minimum, stopping
// Infeasible when every column has been touched, the strategy reports
// impossible, or an addition exceeds the guard. Requires a nonnegative
// matrix; on Feasible the additions vector is the minimal nonnegative
// solution.
SolveOutcome solve_general_scheme(const TropMatrix& A, Strategy strategy,
                                  const SchemeOptions& options = {});

}  // namespace troplin::lifting
