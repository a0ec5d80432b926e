#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>

#include "support.hpp"
#include "troplin/core.hpp"
#include "troplin/lifting.hpp"
#include "troplin/oracle.hpp"

using namespace troplin;
using test::Rng;

namespace {

std::vector<char> mask_of(std::initializer_list<int> cols, std::size_t n) {
  std::vector<char> mask(n, 0);
  for (int c : cols) mask[static_cast<std::size_t>(c)] = 1;
  return mask;
}

// Independent closure: absorbs columns scanning rows in reverse order; the
// fixpoint must not depend on the absorption order.
std::vector<char> closure_reverse_scan(const TropMatrix& A, const lifting::LiftState& state,
                                       std::vector<char> member) {
  const auto profiles = row_min_profile(A, state.additions);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = A.rows(); r-- > 0;) {
      std::uint32_t outside_col = 0;
      std::size_t outside = 0;
      for (std::uint32_t j : profiles[r].argmin_cols) {
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

}  // namespace

TEST_CASE("closure_columns") {
  const std::array<std::size_t, 1> seed0{0};

  const auto two_strict = TropMatrix::from_rows({{1, 2}, {3, 2}});
  CHECK(closure_columns(two_strict, lifting::LiftState(2), seed0) == mask_of({0, 1}, 2));

  const auto flat = TropMatrix::from_rows({{2, 2}});
  CHECK(closure_columns(flat, lifting::LiftState(2), {}) == mask_of({}, 2));

  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  CHECK(closure_columns(nested, lifting::LiftState(2), seed0) == mask_of({0}, 2));
}

TEST_CASE("closure is independent of the absorption order") {
  Rng rng(19);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t m = 1 + rng.index(5);
    const std::size_t n = 2 + rng.index(3);
    const auto A = test::random_matrix(rng, m, n, 3);
    lifting::LiftState state(n);
    for (auto& v : state.additions) v = rng.uniform(0, 2);

    std::vector<std::size_t> seed;
    if (rep % 2) seed.push_back(rng.index(n));
    std::vector<char> seed_mask(n, 0);
    for (std::size_t j : seed) seed_mask[j] = 1;

    CHECK(closure_columns(A, state, seed) == closure_reverse_scan(A, state, seed_mask));
  }
}

TEST_CASE("lift_closure_optimized") {
  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  lifting::LiftState fresh(2);
  const auto inc = lifting::lift_closure_optimized(nested, fresh);
  REQUIRE(inc.has_value());
  CHECK(*inc == lifting::Increment{1, 0});
  fresh.apply(*inc);
  CHECK(verify_solution(nested, fresh.additions));
  CHECK(fresh.additions == SolutionVector{1, 0});

  const auto infeasible = TropMatrix::from_rows({{1, 2}, {3, 2}});
  CHECK_FALSE(lifting::lift_closure_optimized(infeasible, lifting::LiftState(2)).has_value());

  const auto no_strict = TropMatrix::from_rows({{2, 2}, {5, 5}});
  CHECK_THROWS_AS(lifting::lift_closure_optimized(no_strict, lifting::LiftState(2)),
                  std::invalid_argument);
}

TEST_CASE("lift_closure_original") {
  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  const auto inc = lifting::lift_closure_original(nested, lifting::LiftState(2), 0);
  REQUIRE(inc.has_value());
  CHECK(*inc == lifting::Increment{1, 0});

  const auto infeasible = TropMatrix::from_rows({{1, 2}, {3, 2}});
  CHECK_FALSE(
      lifting::lift_closure_original(infeasible, lifting::LiftState(2), 0).has_value());

  const auto single_row = TropMatrix::from_rows({{0, 5}});
  lifting::LiftState state(2);
  const auto wide = lifting::lift_closure_original(single_row, state, 0);
  REQUIRE(wide.has_value());
  CHECK(*wide == lifting::Increment{5, 0});
  state.apply(*wide);
  CHECK(verify_solution(single_row, state.additions));
}

TEST_CASE("lift_agg") {
  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  CHECK(lifting::lift_agg(nested, lifting::LiftState(2)) == lifting::Increment{1, 0});

  const auto stacked = TropMatrix::from_rows({{0, 2}, {0, 9}});
  CHECK(lifting::lift_agg(stacked, lifting::LiftState(2)) == lifting::Increment{9, 0});

  const auto flat = TropMatrix::from_rows({{2, 2}});
  CHECK_THROWS_AS(lifting::lift_agg(flat, lifting::LiftState(2)), std::invalid_argument);
}

TEST_CASE("lift_combined") {
  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  const auto max_mode = lifting::lift_combined(nested, lifting::LiftState(2),
                                               lifting::CombineMode::Max);
  const auto min_mode = lifting::lift_combined(nested, lifting::LiftState(2),
                                               lifting::CombineMode::Min);
  REQUIRE(max_mode.has_value());
  REQUIRE(min_mode.has_value());
  CHECK(*max_mode == lifting::Increment{1, 0});
  CHECK(*min_mode == lifting::Increment{1, 0});

  const auto stacked = TropMatrix::from_rows({{0, 2}, {0, 9}});
  CHECK(*lifting::lift_combined(stacked, lifting::LiftState(2), lifting::CombineMode::Max) ==
        lifting::Increment{9, 0});
  CHECK(*lifting::lift_combined(stacked, lifting::LiftState(2), lifting::CombineMode::Min) ==
        lifting::Increment{2, 0});

  const auto infeasible = TropMatrix::from_rows({{1, 2}, {3, 2}});
  CHECK_FALSE(lifting::lift_combined(infeasible, lifting::LiftState(2),
                                     lifting::CombineMode::Max)
                  .has_value());
  CHECK_FALSE(lifting::lift_combined(infeasible, lifting::LiftState(2),
                                     lifting::CombineMode::Min)
                  .has_value());
}

TEST_CASE("solve_general_scheme on the canonical worked examples") {
  const auto feasible = TropMatrix::from_rows({{1, 2, 3}, {3, 2, 1}});
  const auto oracle_min = oracle::oracle_solve(feasible).minimal;
  for (lifting::Strategy s : lifting::kAllStrategies) {
    const auto out = lifting::solve_general_scheme(feasible, s);
    REQUIRE(out.feasible());
    CHECK(verify_solution(feasible, out.solution));
    CHECK(out.solution == oracle_min);
  }

  const auto infeasible = TropMatrix::from_rows({{1, 2}, {3, 2}});
  for (lifting::Strategy s : lifting::kAllStrategies) {
    CHECK_FALSE(lifting::solve_general_scheme(infeasible, s).feasible());
  }

  const auto nested = TropMatrix::from_rows({{0, 1}, {1, 2}});
  const auto out = lifting::solve_general_scheme(nested, lifting::Strategy::Optimized);
  REQUIRE(out.feasible());
  CHECK(out.solution == SolutionVector{1, 0});
  CHECK(out.stats.lifts == 1);
}

TEST_CASE("scheme edge cases") {
  const auto column = TropMatrix::from_rows({{0}, {3}});
  const auto out = lifting::solve_general_scheme(column, lifting::Strategy::Agg);
  CHECK_FALSE(out.feasible());
  CHECK(out.stats.exit == InfeasibleExit::SingleColumn);

  CHECK_THROWS_AS(
      lifting::solve_general_scheme(TropMatrix::from_rows({{-1, 0}}), lifting::Strategy::Agg),
      std::invalid_argument);

  // a guard forced below the default can cut a feasible run short
  const auto wide = TropMatrix::from_rows({{0, 5}});
  CHECK(lifting::solve_general_scheme(wide, lifting::Strategy::Optimized).feasible());
  lifting::SchemeOptions tight;
  tight.guard_bound = 3;
  const auto cut = lifting::solve_general_scheme(wide, lifting::Strategy::Optimized, tight);
  CHECK_FALSE(cut.feasible());
  CHECK(cut.stats.exit == InfeasibleExit::GuardBound);
  CHECK(cut.stats.guard_trips == 1);
}

TEST_CASE("all strategies agree with the oracle and return its minimal solution") {
  Rng rng(47);
  int feasible_seen = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t m = 1 + rng.index(5);
    const std::size_t n = 1 + rng.index(4);
    const auto A = test::random_matrix(rng, m, n, 4);
    const auto truth = n == 1 ? oracle::OracleSolveResult{Verdict::Infeasible, {}, false}
                              : oracle::oracle_solve(A);
    if (truth.verdict == Verdict::Feasible) ++feasible_seen;

    for (lifting::Strategy s : lifting::kAllStrategies) {
      const auto out = lifting::solve_general_scheme(A, s);
      REQUIRE(out.verdict == truth.verdict);
      if (out.feasible()) {
        CHECK(out.solution == truth.minimal);
        CHECK(verify_solution(A, out.solution));
      }
    }
  }
  CHECK(feasible_seen >= 20);
}

TEST_CASE("safety: additions never exceed the minimal solution; infeasibility exits never fire "
          "on feasible runs") {
  Rng rng(53);
  int feasible_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t m = 1 + rng.index(4);
    const std::size_t n = 2 + rng.index(3);
    const auto A = test::random_matrix(rng, m, n, 4);
    const auto truth = oracle::oracle_solve(A);
    if (truth.verdict != Verdict::Feasible) continue;
    ++feasible_seen;

    for (lifting::Strategy s : lifting::kAllStrategies) {
      lifting::SchemeOptions options;
      bool safe = true;
      options.on_lift = [&](const lifting::LiftState& state) {
        for (std::size_t j = 0; j < n; ++j) {
          safe &= state.additions[j] <= truth.minimal[j];
        }
      };
      const auto out = lifting::solve_general_scheme(A, s, options);
      CHECK(safe);
      REQUIRE(out.feasible());
      CHECK(out.stats.exit == InfeasibleExit::None);
      CHECK(out.stats.guard_trips == 0);
      CHECK(out.stats.touched_columns < n);
      CHECK(std::count(out.solution.begin(), out.solution.end(), 0) >= 1);
    }
  }
  CHECK(feasible_seen >= 25);
}

TEST_CASE("progress: lift counts stay within the guard budget") {
  Rng rng(61);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + rng.index(5);
    const std::size_t n = 2 + rng.index(3);
    const auto A = test::random_matrix(rng, m, n, 4);
    const Value guard = lifting::default_guard_bound(A);
    for (lifting::Strategy s : lifting::kAllStrategies) {
      const auto out = lifting::solve_general_scheme(A, s);
      CHECK(out.stats.lifts <= static_cast<std::uint64_t>(n) *
                                   static_cast<std::uint64_t>(guard + 1));
    }
  }
}
