#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "wzw/null_solver.hpp"

using namespace wzw;

namespace {

std::vector<Rational> sl2_solution() { return {frac(8, 3), 1, 1, 1}; }

}  // namespace

TEST(NullSolver, CandidateShape) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 4);
  const NullCandidate c = build_candidate(M, 0, 2, Tie::per_generator);
  EXPECT_EQ(c.unknowns, (std::vector<std::string>{"kappa0", "kappa1", "kappa2", "kappa3"}));
  EXPECT_EQ(c.degree(), 4);
  int d = 0;
  EXPECT_TRUE(is_homogeneous(c.evaluate({1, 2, 3, 4}), &d));
  EXPECT_EQ(d, 4);
  // affine-linear in kappa
  const auto v1 = c.evaluate({1, 0, 0, 0}), v0 = c.evaluate({0, 0, 0, 0});
  EXPECT_EQ(v1 - v0, c.directions[0]);
  EXPECT_EQ(v0, c.constant);

  const LieData L3 = build_sl(3);
  WeylModule M3(L3, 1, L3.zero_weight(), 4);
  EXPECT_EQ(build_candidate(M3, 0, 2, Tie::single_tau).unknowns, (std::vector<std::string>{"kappa", "tau"}));
}

TEST(NullSolver, CandidateErrors) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 3);
  auto code = [&](auto f) -> std::optional<Errc> {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code([&] { build_candidate(M, 0, 2, Tie::per_generator); }), Errc::truncation_violation);
  EXPECT_EQ(code([&] { build_candidate(M, ModuleVector{}, 1, Tie::per_generator); }), Errc::zero_vector);
  const ModuleVector deg1 = M.apply(L.cartan(0), -1, M.top_vector(0));
  EXPECT_EQ(code([&] { build_candidate(M, deg1, 1, Tie::per_generator); }), Errc::degree_mismatch);
  EXPECT_THROW(build_candidate(M, 0, 0, Tie::per_generator), Error);
  EXPECT_THROW(build_candidate(M, 5, 1, Tie::per_generator), Error);
}

TEST(NullSolver, N1Candidate) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  const NullCandidate c = build_candidate(M, 0, 1, Tie::per_generator);
  // -2 L_{-2} + kappa0/2 L_{-1}^2 + 1/2 sum kappa_r (X_r)_{-1}^2, on |0> the L_{-1} term vanishes
  EXPECT_TRUE(c.directions[0].empty());
  EXPECT_EQ(c.constant, Rational(-2) * M.sugawara(-2, M.top_vector(0)));
}

TEST(NullSolver, Sl2VacuumUnique) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 4);
  const NullCandidate c = build_candidate(M, 0, 2, Tie::per_generator);
  const SolveReport r = solve(c);
  ASSERT_EQ(r.status, SolveStatus::unique_solution);
  EXPECT_EQ(r.solution, sl2_solution());
  EXPECT_TRUE(r.all_positive);
  EXPECT_FALSE(r.algebraic_only());
  for (const auto& x : r.residual) EXPECT_EQ(x, 0);
  EXPECT_TRUE(verify_null(M, c.evaluate(r.solution)).is_null);
}

TEST(NullSolver, PerturbationIsNotNull) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 4);
  const NullCandidate c = build_candidate(M, 0, 2, Tie::per_generator);
  for (std::size_t i = 0; i < 4; ++i) {
    auto k = sl2_solution();
    k[i] += 1;
    const NullVerdict v = verify_null(M, c.evaluate(k));
    EXPECT_FALSE(v.is_null);
    EXPECT_FALSE(v.nonzero_pairings.empty());
    EXPECT_EQ(v.checked, M.dimension(4));
  }
}

TEST(NullSolver, VerifyNullEdgeCases) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  EXPECT_TRUE(verify_null(M, ModuleVector{}).is_null);
  const ModuleVector mixed = M.top_vector(0) + M.apply(L.cartan(0), -1, M.top_vector(0));
  try {
    verify_null(M, mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degree_mismatch);
  }
  // E_{-1}^2 |0> is singular at level 1
  const ModuleVector e2 = M.apply(L.raising(0), -1, M.apply(L.raising(0), -1, M.top_vector(0)));
  EXPECT_TRUE(verify_null(M, e2).is_null);
}

TEST(NullSolver, Sl2SingleTau) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 4);
  const SolveReport r = solve(build_candidate(M, 0, 2, Tie::single_tau));
  ASSERT_EQ(r.status, SolveStatus::unique_solution);
  EXPECT_EQ(r.solution, (std::vector<Rational>{frac(8, 3), 1}));
}

TEST(NullSolver, Sl3BothTies) {
  const LieData L = build_sl(3);
  WeylModule M(L, 1, L.zero_weight(), 4);
  const SolveReport t = solve(build_candidate(M, 0, 2, Tie::single_tau));
  ASSERT_EQ(t.status, SolveStatus::unique_solution);
  EXPECT_EQ(t.solution, (std::vector<Rational>{frac(12, 5), frac(4, 5)}));
  const SolveReport p = solve(build_candidate(M, 0, 2, Tie::per_generator));
  ASSERT_EQ(p.status, SolveStatus::unique_solution);
  // per-generator solution is r-independent and agrees with single-tau
  EXPECT_EQ(p.solution[0], t.solution[0]);
  for (std::size_t r = 1; r < p.solution.size(); ++r) EXPECT_EQ(p.solution[r], t.solution[1]);
  EXPECT_TRUE(p.all_positive);
}

TEST(NullSolver, Sl2SpinHalfInfeasible) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.fundamental(0), 4);
  for (Tie tie : {Tie::per_generator, Tie::single_tau}) {
    const SolveReport r = solve(build_candidate(M, 0, 2, tie));
    EXPECT_EQ(r.status, SolveStatus::infeasible);
    EXPECT_TRUE(r.solution.empty());
  }
}

TEST(NullSolver, N1IsAFamilyAndEveryMemberIsNull) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  const NullCandidate c = build_candidate(M, 0, 1, Tie::per_generator);
  const SolveReport r = solve(c);
  ASSERT_EQ(r.status, SolveStatus::family);
  ASSERT_FALSE(r.directions.empty());
  EXPECT_TRUE(verify_null(M, c.evaluate(r.solution)).is_null);
  for (const auto& d : r.directions) {
    auto k = r.solution;
    for (std::size_t i = 0; i < k.size(); ++i) k[i] += 3 * d[i];
    EXPECT_TRUE(verify_null(M, c.evaluate(k)).is_null);
  }
}

TEST(NullSolver, SolutionInvariantUnderBasisReordering) {
  const LieData L = build_sl(2);
  for (const Weight& w : {L.zero_weight(), L.fundamental(0)}) {
    WeylModule M(L, 1, w, 4);
    const NullCandidate c = build_candidate(M, 0, 2, Tie::per_generator);
    const NullSystem sys = null_system(c);
    const SolveReport base = solve_system(sys, c.unknowns);
    std::mt19937 rng(17);
    std::vector<std::size_t> order(sys.constant.size());
    std::iota(order.begin(), order.end(), 0);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      const SolveReport r = solve_system(sys, c.unknowns, &order);
      EXPECT_EQ(r.status, base.status);
      EXPECT_EQ(r.solution, base.solution);
      EXPECT_EQ(r.rank, base.rank);
    }
  }
}

TEST(NullSolver, ScanRowsAndCheckpointSkip) {
  std::vector<std::vector<ScanRow>> snapshots;
  const auto rows = conjecture_scan({2, 3}, 2, {}, [&](const std::vector<ScanRow>& r) { snapshots.push_back(r); });
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].report.solution, (std::vector<Rational>{frac(8, 3), 1}));
  EXPECT_EQ(rows[1].report.solution, (std::vector<Rational>{frac(12, 5), frac(4, 5)}));
  EXPECT_EQ(snapshots.size(), 2u);

  // resume: the finished sl2 row is not recomputed
  std::vector<ScanRow> done{rows[0]};
  done[0].seconds = -1;
  int calls = 0;
  const auto resumed = conjecture_scan({2, 3}, 2, done, [&](const std::vector<ScanRow>&) { ++calls; });
  ASSERT_EQ(resumed.size(), 2u);
  EXPECT_EQ(resumed[0].seconds, -1);
  EXPECT_EQ(calls, 1);
}
