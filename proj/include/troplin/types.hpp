#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace troplin {

// Matrix entries, column offsets and solution components are all exact
// signed 64-bit integers. Two caps keep every internal sum exact:
//
//  - kEntryCap bounds entries of *input* systems and is enforced when
//    instances are parsed.
//  - Every TropMatrix additionally satisfies (m + n + 2) * (max|entry| + 1)
//    <= kSafeSumBound, which covers assignment potentials, column lifts and
//    permanent sums. Derived matrices (solution matrices, transposes of
//    solution stacks) may exceed kEntryCap but never this bound; the
//    constructor rejects anything that would.
using Value = std::int64_t;
using SolutionVector = std::vector<Value>;

inline constexpr Value kEntryCap = Value{1} << 40;
inline constexpr Value kSafeSumBound = Value{1} << 62;

// Semiring operations: "addition" is minimum, "multiplication" is +.
constexpr Value trop_add(Value a, Value b) { return a < b ? a : b; }
constexpr Value trop_mul(Value a, Value b) { return a + b; }

// Signals a broken internal postcondition (e.g. a Cramer vector that fails
// verification). Distinct from invalid_argument so callers can tell a bug
// from a misuse.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

enum class Verdict { Feasible, Infeasible };

// Which exit produced an Infeasible verdict in the lifting scheme.
enum class InfeasibleExit {
  None,           // verdict was Feasible
  SingleColumn,   // n = 1: a one-column row can never tie
  AllTouched,     // every column has been lifted at least once
  Impossible,     // the strategy's column set absorbed all columns
  GuardBound,     // a cumulative addition exceeded the guard bound
  Shape,          // decided by shape analysis (square/overdetermined paths)
};

struct Stats {
  std::uint64_t lifts = 0;
  std::uint64_t touched_columns = 0;
  std::uint64_t guard_trips = 0;
  std::uint64_t recursion_nodes = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t assignment_calls = 0;
  std::uint64_t wall_micros = 0;
  InfeasibleExit exit = InfeasibleExit::None;

  void absorb(const Stats& other) {
    lifts += other.lifts;
    touched_columns += other.touched_columns;
    guard_trips += other.guard_trips;
    recursion_nodes += other.recursion_nodes;
    memo_hits += other.memo_hits;
    assignment_calls += other.assignment_calls;
  }
};

struct SolveOutcome {
  Verdict verdict = Verdict::Infeasible;
  SolutionVector solution;  // nonempty iff verdict == Feasible
  Stats stats;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

}  // namespace troplin
