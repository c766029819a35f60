#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "wzw/linalg.hpp"
#include "wzw/rational.hpp"

using namespace wzw;

namespace {

RationalMatrix random_matrix(std::mt19937& rng, int rows, int cols, int lo, int hi, double zero_p = 0.3) {
  std::uniform_int_distribution<int> v(lo, hi);
  std::bernoulli_distribution z(zero_p);
  RationalMatrix m(rows, RationalColumn(cols));
  for (auto& r : m)
    for (auto& x : r) x = z(rng) ? Rational(0) : Rational(v(rng), 1 + std::abs(v(rng)) % 3);
  for (auto& r : m)
    for (auto& x : r) x.canonicalize();
  return m;
}

// textbook Gauss-Jordan over Q, used as the rank oracle
std::size_t naive_rank(RationalMatrix m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST(Rational, ParseCanonical) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-8/3")), "-8/3");
  EXPECT_EQ(to_string(parse_rational("5")), "5/1");
  EXPECT_EQ(to_string(parse_rational("0")), "0/1");
  EXPECT_EQ(to_string(parse_rational("+2/6")), "1/3");
  EXPECT_EQ(to_string(frac(3, 3)), "1/1");
  EXPECT_EQ(frac(3, 3), Rational(1));
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "a", "1.5", "1/-2", "--1", "1/2/3"})
    EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(Rational, RoundTrip) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    long b = d(rng);
    if (b == 0) b = 7;
    const Rational q = frac(d(rng), b);
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
}

TEST(Linalg, RankMatchesNaiveElimination) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 7, cols = 1 + (trial * 3) % 8;
    RationalMatrix m = random_matrix(rng, rows, cols, -5, 5, trial % 2 ? 0.6 : 0.2);
    if (trial % 5 == 0 && rows > 1) m[rows - 1] = m[0];  // force dependence
    EXPECT_EQ(rank(m), naive_rank(m)) << "trial " << trial;
  }
}

TEST(Linalg, RankInvariantUnderPermutations) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = random_matrix(rng, 6, 5, -3, 3, 0.5);
    const std::size_t r = rank(m);
    std::vector<int> rp(6), cp(5);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    RationalMatrix p(6, RationalColumn(5));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 5; ++j) p[i][j] = m[rp[i]][cp[j]];
    EXPECT_EQ(rank(p), r);
  }
}

TEST(Linalg, ReducedEchelonIsReduced) {
  std::mt19937 rng(3);
  RationalMatrix m = random_matrix(rng, 5, 7, -4, 4);
  const Echelon e = row_reduce(m);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    const std::size_t c = e.pivots[k];
    for (std::size_t i = 0; i < e.reduced.size(); ++i)
      EXPECT_EQ(e.reduced[i][c], i == k ? Rational(1) : Rational(0));
  }
}

TEST(Linalg, InverseTimesMatrixIsIdentity) {
  std::mt19937 rng(11);
  int done = 0;
  while (done < 10) {
    RationalMatrix m = random_matrix(rng, 4, 4, -6, 6, 0.1);
    if (naive_rank(m) < 4) continue;
    const RationalMatrix p = multiply(inverse(m), m);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(p[i][j], Rational(i == j ? 1 : 0));
    ++done;
  }
}

TEST(Linalg, SolveAffineUnique) {
  RationalMatrix a{{Rational(2), Rational(1)}, {Rational(1), Rational(-1)}, {Rational(3), Rational(0)}};
  RationalColumn b{Rational(5), Rational(1), Rational(6)};
  const AffineSolution s = solve_affine(a, b);
  ASSERT_EQ(s.kind, SolutionKind::unique);
  EXPECT_EQ(s.particular[0], Rational(2));
  EXPECT_EQ(s.particular[1], Rational(1));
}

TEST(Linalg, SolveAffineInfeasible) {
  RationalMatrix a{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
  RationalColumn b{Rational(1), Rational(3)};
  EXPECT_EQ(solve_affine(a, b).kind, SolutionKind::infeasible);
}

TEST(Linalg, SolveAffineFamilyDirectionsSpanKernel) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix a = random_matrix(rng, 3, 6, -4, 4);
    RationalColumn x0(6);
    for (auto& x : x0) x = Rational(static_cast<int>(rng() % 7) - 3);
    const RationalColumn b = multiply(a, x0);
    const AffineSolution s = solve_affine(a, b);
    ASSERT_NE(s.kind, SolutionKind::infeasible);
    EXPECT_EQ(multiply(a, s.particular), b);
    EXPECT_EQ(s.directions.size(), 6 - naive_rank(a));
    for (const auto& d : s.directions)
      for (const auto& x : multiply(a, d)) EXPECT_EQ(x, 0);
  }
}
