#include "troplin/lifting.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "troplin/core.hpp"
#include "troplin/kernels.hpp"

namespace troplin::lifting {

namespace {

// Minimum positions per row of the offset matrix, rows scope_top..m-1.
std::vector<std::vector<std::uint32_t>> scope_argmins(const TropMatrix& A,
                                                      const LiftState& state,
                                                      std::size_t scope_top) {
  std::vector<std::vector<std::uint32_t>> argmins(A.rows());
  for (std::size_t i = scope_top; i < A.rows(); ++i) {
    const Value* row = A.row_data(i);
    const Value lo = kernels::min2_offset(row, state.additions.data(), A.cols()).lo;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (row[j] + state.additions[j] == lo) {
        argmins[i].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
  return argmins;
}

std::vector<char> closure_impl(const TropMatrix& A, const LiftState& state,
                               std::vector<char> member, std::size_t scope_top) {
  const auto argmins = scope_argmins(A, state, scope_top);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = scope_top; i < A.rows(); ++i) {
      std::uint32_t outside_col = 0;
      std::size_t outside = 0;
      for (std::uint32_t j : argmins[i]) {
        if (!member[j]) {
          outside_col = j;
          ++outside;
        }
      }
      if (outside == 1) {
        member[outside_col] = 1;
        changed = true;
      }
    }
  }
  return member;
}

bool row_is_strict(const TropMatrix& A, const LiftState& state, std::size_t i) {
  const auto pair = kernels::min2_offset(A.row_data(i), state.additions.data(), A.cols());
  return pair.lo != pair.second;
}

bool any_strict_row(const TropMatrix& A, const LiftState& state, std::size_t scope_top = 0) {
  for (std::size_t i = scope_top; i < A.rows(); ++i) {
    if (row_is_strict(A, state, i)) return true;
  }
  return false;
}

// Shared tail of both closure lifts: given the closed column set, the
// lift amount is the smallest slack over rows whose minimum positions all
// lie inside the set; rows with two or more positions outside impose
// nothing, and exactly-one-outside rows cannot survive the closure.
std::optional<Increment> lift_from_closure(const TropMatrix& A, const LiftState& state,
                                           const std::vector<char>& member,
                                           std::size_t scope_top) {
  const std::size_t n = A.cols();
  if (std::count(member.begin(), member.end(), char{1}) == static_cast<std::ptrdiff_t>(n)) {
    return std::nullopt;
  }
  const auto argmins = scope_argmins(A, state, scope_top);
  Value amount = kernels::kAbsent;
  for (std::size_t i = scope_top; i < A.rows(); ++i) {
    std::size_t outside = 0;
    for (std::uint32_t j : argmins[i]) outside += !member[j];
    assert(outside != 1 && "closure left a row with exactly one minimum outside");
    if (outside != 0) continue;
    const Value* row = A.row_data(i);
    const Value row_min = row[argmins[i].front()] + state.additions[argmins[i].front()];
    Value outside_min = kernels::kAbsent;
    for (std::size_t j = 0; j < n; ++j) {
      if (!member[j]) outside_min = std::min(outside_min, row[j] + state.additions[j]);
    }
    amount = std::min(amount, outside_min - row_min);
  }
  if (amount == kernels::kAbsent) {
    throw std::invalid_argument("closure lift: no row constrains the lift (no strict minimum?)");
  }
  Increment inc(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (member[j]) inc[j] = amount;
  }
  return inc;
}

std::optional<Increment> lift_optimized_scoped(const TropMatrix& A, const LiftState& state,
                                               std::size_t scope_top) {
  const std::vector<char> member =
      closure_impl(A, state, std::vector<char>(A.cols(), 0), scope_top);
  return lift_from_closure(A, state, member, scope_top);
}

std::optional<Increment> lift_original_scoped(const TropMatrix& A, const LiftState& state,
                                              std::size_t strict_row) {
  const Value* row = A.row_data(strict_row);
  std::size_t argmin = 0;
  Value best = row[0] + state.additions[0];
  for (std::size_t j = 1; j < A.cols(); ++j) {
    const Value v = row[j] + state.additions[j];
    if (v < best) {
      best = v;
      argmin = j;
    }
  }
  std::vector<char> seed(A.cols(), 0);
  seed[argmin] = 1;
  const std::vector<char> member = closure_impl(A, state, std::move(seed), strict_row);
  return lift_from_closure(A, state, member, strict_row);
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Original: return "original";
    case Strategy::Optimized: return "optimized";
    case Strategy::Agg: return "agg";
    case Strategy::CombinedMax: return "combined-max";
    case Strategy::CombinedMin: return "combined-min";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

std::vector<char> closure_columns(const TropMatrix& A, const LiftState& state,
                                  std::span<const std::size_t> seed) {
  std::vector<char> member(A.cols(), 0);
  for (std::size_t j : seed) {
    if (j >= A.cols()) throw std::invalid_argument("closure_columns: seed column out of range");
    member[j] = 1;
  }
  return closure_impl(A, state, std::move(member), 0);
}

std::optional<Increment> lift_closure_optimized(const TropMatrix& A, const LiftState& state) {
  return lift_optimized_scoped(A, state, 0);
}

std::optional<Increment> lift_closure_original(const TropMatrix& A, const LiftState& state,
                                                 std::size_t strict_row) {
  if (strict_row >= A.rows()) {
    throw std::invalid_argument("lift_closure_original: row out of range");
  }
  return lift_original_scoped(A, state, strict_row);
}

Increment lift_agg(const TropMatrix& A, const LiftState& state) {
  Increment inc(A.cols(), 0);
  bool saw_strict = false;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto profile = row_min_profile_row(A, state.additions, i);
    if (!profile.strict()) continue;
    saw_strict = true;
    if (!profile.second_distinct) {
      throw std::invalid_argument("lift_agg: strict row has no second level (single column?)");
    }
    const Value gap = *profile.second_distinct - profile.min;
    const std::uint32_t col = profile.argmin_cols.front();
    inc[col] = std::max(inc[col], gap);
  }
  if (!saw_strict) {
    throw std::invalid_argument("lift_agg: no row has a strict minimum");
  }
  return inc;
}

std::optional<Increment> lift_combined(const TropMatrix& A, const LiftState& state,
                                       CombineMode mode) {
  const auto grig = lift_closure_optimized(A, state);
  if (!grig) return std::nullopt;
  const Increment agg = lift_agg(A, state);
  Increment inc(A.cols(), 0);
  for (std::size_t j = 0; j < A.cols(); ++j) {
    inc[j] = mode == CombineMode::Max ? std::max((*grig)[j], agg[j])
                                      : std::min((*grig)[j], agg[j]);
  }
  return inc;
}

Value default_guard_bound(const TropMatrix& A) {
  return static_cast<Value>(A.cols() - 1) * std::max<Value>(A.max_entry(), 0) + 1;
}

namespace {

std::optional<Increment> propose(const TropMatrix& A, const LiftState& state, Strategy strategy,
                                 std::size_t scope_top) {
  switch (strategy) {
    case Strategy::Original: return lift_original_scoped(A, state, scope_top);
    case Strategy::Optimized: return lift_closure_optimized(A, state);
    case Strategy::Agg: return lift_agg(A, state);
    case Strategy::CombinedMax: return lift_combined(A, state, CombineMode::Max);
    case Strategy::CombinedMin: return lift_combined(A, state, CombineMode::Min);
  }
  throw std::logic_error("unreachable strategy");
}

}  // namespace

SolveOutcome solve_general_scheme(const TropMatrix& A, Strategy strategy,
                                  const SchemeOptions& options) {
  if (A.min_entry() < 0) {
    throw std::invalid_argument("solve_general_scheme: matrix must be nonnegative");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = A.cols();
  const Value guard = options.guard_bound.value_or(default_guard_bound(A));

  SolveOutcome out;
  LiftState state(n);
  const auto finish = [&](Verdict verdict, InfeasibleExit exit) {
    out.verdict = verdict;
    out.stats.exit = exit;
    out.stats.lifts = state.lifts;
    out.stats.touched_columns = state.touched_count;
    out.stats.wall_micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                              t0)
            .count());
    if (verdict == Verdict::Feasible) {
      out.solution = state.additions;
      assert(verify_solution(A, out.solution));
    }
    return out;
  };

  // Width-1 rows can never tie, so those systems are infeasible outright.
  if (n == 1) return finish(Verdict::Infeasible, InfeasibleExit::SingleColumn);

  const auto step = [&](std::size_t scope_top) -> std::optional<SolveOutcome> {
    if (state.touched_count == n) {
      return finish(Verdict::Infeasible, InfeasibleExit::AllTouched);
    }
    const auto increment = propose(A, state, strategy, scope_top);
    if (!increment) {
      return finish(Verdict::Infeasible, InfeasibleExit::Impossible);
    }
    bool progress = false;
    for (Value v : *increment) progress |= v > 0;
    if (!progress) {
      throw internal_error("solve_general_scheme: strategy proposed an empty lift");
    }
    state.apply(*increment);
    for (std::size_t j = 0; j < n; ++j) {
      if (state.additions[j] > guard) {
        ++out.stats.guard_trips;
        return finish(Verdict::Infeasible, InfeasibleExit::GuardBound);
      }
    }
    if (options.on_lift) options.on_lift(state);
    return std::nullopt;
  };

  if (strategy == Strategy::Original) {
    // Bottom-up over rows: solve the suffix below, then lift the newly
    // added top row while it keeps a strict minimum.
    for (std::size_t top = A.rows(); top-- > 0;) {
      while (row_is_strict(A, state, top)) {
        if (auto done = step(top)) return *done;
      }
    }
    return finish(Verdict::Feasible, InfeasibleExit::None);
  }

  while (any_strict_row(A, state)) {
    if (auto done = step(0)) return *done;
  }
  return finish(Verdict::Feasible, InfeasibleExit::None);
}

}  // namespace troplin::lifting
