#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "wzw/affine.hpp"

using namespace wzw;

namespace {

// Coefficient of q^d in prod_k (1 - q^k)^{-colors}.
std::vector<long> colored_partitions(int colors, int max_d) {
  std::vector<long> c(max_d + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= max_d; ++k)
    for (int rep = 0; rep < colors; ++rep)
      for (int d = k; d <= max_d; ++d) c[d] += c[d - k];
  return c;
}

// Theta series of the A_{r} root lattice over eta^r: sum over lattice points
// beta of p_r(d - (beta|beta)/2).
std::vector<long> lattice_character(int r, int max_d) {
  const auto p = colored_partitions(r, max_d);
  std::vector<long> out(max_d + 1, 0);
  const int b = 2 * max_d + 1;
  std::vector<int> x(r, -b);
  while (true) {
    long norm = 0;
    for (int i = 0; i < r; ++i) {
      norm += 2L * x[i] * x[i];
      if (i + 1 < r) norm -= 2L * x[i] * x[i + 1];
    }
    if (norm / 2 <= max_d)
      for (int d = static_cast<int>(norm / 2); d <= max_d; ++d) out[d] += p[d - norm / 2];
    int i = 0;
    while (i < r && x[i] == b) x[i++] = -b;
    if (i == r) break;
    ++x[i];
  }
  return out;
}

}  // namespace

TEST(WeylModule, GradedDimensionsMatchPartitionCount) {
  for (int n = 2; n <= 3; ++n) {
    const LieData L = build_sl(n);
    const auto expected = colored_partitions(L.dim(), 4);
    WeylModule M(L, 1, L.zero_weight(), 4);
    WeylModule M1(L, 1, L.fundamental(0), 4);
    for (int d = 0; d <= 4; ++d) {
      EXPECT_EQ(M.dimension(d), static_cast<std::size_t>(expected[d]));
      EXPECT_EQ(M1.dimension(d), static_cast<std::size_t>(expected[d] * n));
    }
  }
}

TEST(WeylModule, RejectsWeightOutsideLevel) {
  const LieData L = build_sl(2);
  try {
    WeylModule M(L, 1, Weight{{2}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::weight_out_of_range);
  }
  EXPECT_THROW(WeylModule(L, 0, L.zero_weight(), 2), Error);
}

TEST(WeylModule, TruncationViolation) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  const ModuleVector v = M.apply(L.lowering(0), -2, M.top_vector(0));
  try {
    M.apply(L.raising(0), -1, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::truncation_violation);
  }
}

TEST(WeylModule, PositiveModesAndTopAction) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.fundamental(0), 3);
  EXPECT_TRUE(M.apply(L.raising(0), 1, M.top_vector(0)).empty());
  EXPECT_TRUE(M.apply(L.raising(0), 0, M.top_vector(0)).empty());  // highest weight
  const ModuleVector h = M.apply(L.cartan(0), 0, M.top_vector(0));
  EXPECT_EQ(h, M.top_vector(0));
}

TEST(WeylModule, AffineRelationsSl2) {
  const LieData L = build_sl(2);
  for (const Weight& w : {L.zero_weight(), L.fundamental(0)}) {
    WeylModule M(L, 1, w, 4);
    const auto r = verify_affine(M, 4, 4);
    EXPECT_GT(r.checks, 1000u);
    EXPECT_TRUE(r.ok());
  }
}

TEST(WeylModule, AffineRelationsHigherLevelAndRank) {
  const LieData L2 = build_sl(2);
  WeylModule M2(L2, 2, L2.fundamental(0), 3);
  EXPECT_TRUE(verify_affine(M2, 2, 3).ok());
  try {
    WeylModule bad(L2, 2, Weight{{2}}, 1);  // dominant at level 2, not an exterior power
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_weight);
  }
  const LieData L3 = build_sl(3);
  WeylModule M3(L3, 1, L3.fundamental(1), 2);
  EXPECT_TRUE(verify_affine(M3, 2, 2).ok());
}

TEST(WeylModule, VirasoroRelations) {
  for (int n = 2; n <= 3; ++n) {
    const LieData L = build_sl(n);
    WeylModule M(L, 1, L.zero_weight(), n == 2 ? 4 : 3);
    EXPECT_EQ(M.central_charge(), Rational(n - 1));
    const auto r = verify_virasoro(M, 4, M.max_degree());
    EXPECT_GT(r.checks, 100u);
    EXPECT_TRUE(r.ok());
  }
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.fundamental(0), 4);
  EXPECT_EQ(M.conformal_weight(), frac(1, 4));
  EXPECT_TRUE(verify_virasoro(M, 4, 4).ok());
}

TEST(WeylModule, L0Eigenvalue) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.fundamental(0), 3);
  for (int d = 0; d <= 3; ++d)
    for (const auto& b : M.basis(d)) {
      const ModuleVector u(b);
      EXPECT_EQ(M.sugawara(0, u), (frac(1, 4) + d) * u);
    }
}

TEST(WeylModule, ContravarianceAndGramSymmetry) {
  const LieData L = build_sl(2);
  for (const Weight& w : {L.zero_weight(), L.fundamental(0)}) {
    WeylModule M(L, 1, w, 4);
    EXPECT_TRUE(verify_contravariance(M, 4, 4).ok());
    for (int d = 0; d <= 4; ++d) {
      const RationalMatrix g = M.gram(d);
      EXPECT_EQ(g, transpose(g));
    }
  }
}

TEST(WeylModule, GramRanksMatchLatticeCharacter) {
  const auto chi1 = lattice_character(1, 4);
  EXPECT_EQ(chi1, (std::vector<long>{1, 3, 4, 7, 13}));
  const LieData L2 = build_sl(2);
  WeylModule M2(L2, 1, L2.zero_weight(), 4);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(rank(M2.gram(d)), static_cast<std::size_t>(chi1[d])) << d;

  const auto chi2 = lattice_character(2, 3);
  const LieData L3 = build_sl(3);
  WeylModule M3(L3, 1, L3.zero_weight(), 3);
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(rank(M3.gram(d)), static_cast<std::size_t>(chi2[d])) << d;
}

TEST(WeylModule, VirasoroVectorNorm) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  const ModuleVector v = M.sugawara(-2, M.top_vector(0));
  Rational norm = 0;
  for (const auto& [m, c] : v) norm += c * M.pairing(m, v);
  EXPECT_EQ(norm, frac(1, 2));  // c / 2
}

TEST(WeylModule, QuotientKillsRadical) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  // E_{-1}^2 |0> spans part of the radical at level 1
  const ModuleVector v = M.apply(L.raising(0), -1, M.apply(L.raising(0), -1, M.top_vector(0)));
  const QuotientSlice q = quotient_slice(M, 2);
  EXPECT_EQ(q.dim(), 4u);
  for (const auto& x : quotient_coordinates(M, q, v)) EXPECT_EQ(x, 0);
  // representatives map to unit coordinates
  const auto basis = M.basis(2);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const auto c = quotient_coordinates(M, q, ModuleVector(basis[q.representatives[i]]));
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], Rational(i == j ? 1 : 0));
  }
}

TEST(WeylModule, PairingsAgreeWithGramRows) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.fundamental(0), 3);
  std::mt19937 rng(9);
  const auto basis = M.basis(3);
  const RationalMatrix g = M.gram(3);
  ModuleVector u;
  std::vector<Rational> coords(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    coords[i] = Rational(static_cast<int>(rng() % 7) - 3);
    u.add(basis[i], coords[i]);
  }
  EXPECT_EQ(M.pairings(3, u), multiply(g, coords));
}

TEST(WeylModule, HomogeneityHelper) {
  const LieData L = build_sl(2);
  WeylModule M(L, 1, L.zero_weight(), 2);
  int d = -1;
  EXPECT_TRUE(is_homogeneous(ModuleVector{}, &d));
  EXPECT_EQ(d, 0);
  ModuleVector mixed = M.top_vector(0) + M.apply(L.cartan(0), -1, M.top_vector(0));
  EXPECT_FALSE(is_homogeneous(mixed));
}
