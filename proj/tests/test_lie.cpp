#include <gtest/gtest.h>

#include <complex>

#include "wzw/lie.hpp"

using namespace wzw;

namespace {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.size(), RationalColumn(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = m[i][j];
  return r;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, RationalColumn(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RationalMatrix mat_sub(RationalMatrix a, const RationalMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
  return a;
}

}  // namespace

TEST(Lie, RejectsSmallRank) {
  EXPECT_THROW(build_sl(1), Error);
  try {
    build_sl(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_rank);
  }
}

TEST(Lie, Dimensions) {
  for (int n = 2; n <= 5; ++n) {
    const LieData L = build_sl(n);
    EXPECT_EQ(L.dim(), n * n - 1);
    EXPECT_EQ(L.rank(), n - 1);
    EXPECT_EQ(L.num_positive_roots(), n * (n - 1) / 2);
    EXPECT_EQ(L.dual_coxeter(), n);
  }
  EXPECT_EQ(build_sl(2).name(0), "E");
  EXPECT_EQ(build_sl(3).name(build_sl(3).lowering(0)), "F21");
}

TEST(Lie, BracketMatchesMatrixCommutator) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    for (int a = 0; a < L.dim(); ++a)
      for (int b = 0; b < L.dim(); ++b) {
        const RationalMatrix ma = to_rational(L.matrix(a)), mb = to_rational(L.matrix(b));
        const RationalMatrix comm = mat_sub(mat_mul(ma, mb), mat_mul(mb, ma));
        RationalMatrix rebuilt(n, RationalColumn(n));
        for (const auto& t : L.bracket(a, b)) {
          const RationalMatrix mg = to_rational(L.matrix(t.gen));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rebuilt[i][j] += t.coeff * mg[i][j];
        }
        EXPECT_EQ(rebuilt, comm) << L.name(a) << "," << L.name(b);
      }
  }
}

TEST(Lie, FormIsTraceForm) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    for (int a = 0; a < L.dim(); ++a)
      for (int b = 0; b < L.dim(); ++b) {
        const RationalMatrix p = mat_mul(to_rational(L.matrix(a)), to_rational(L.matrix(b)));
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += p[i][i];
        EXPECT_EQ(L.form(a, b), tr);
      }
  }
}

TEST(Lie, JacobiAndInvariance) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    EXPECT_TRUE(jacobi_holds(L));
    EXPECT_TRUE(form_is_invariant(L));
  }
}

TEST(Lie, OmegaIsTranspose) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    for (int a = 0; a < L.dim(); ++a) {
      const IntMatrix& m = L.matrix(a);
      const IntMatrix& w = L.matrix(L.omega(a));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_EQ(w[i][j], m[j][i]);
      EXPECT_EQ(L.omega(L.omega(a)), a);
    }
  }
}

// Sum of X_r^2 over a trace-orthonormal basis acts on C^n as (n - 1/n) I.
TEST(Lie, CasimirOnDefiningRepresentation) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    RationalMatrix c(n, RationalColumn(n));
    for (const auto& t : squared_table(L).casimir()) {
      const RationalMatrix p = mat_mul(to_rational(L.matrix(t.left)), to_rational(L.matrix(t.right)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i][j] += t.coeff * p[i][j];
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_EQ(c[i][j], i == j ? Rational(n) - frac(1, n) : Rational(0));
  }
}

TEST(Lie, HermitianBasisIsOrthonormalAndMatchesSquares) {
  using C = std::complex<double>;
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    const auto basis = hermitian_basis(L);
    const auto table = squared_table(L);
    ASSERT_EQ(basis.size(), static_cast<std::size_t>(L.dim()));
    ASSERT_EQ(table.size(), basis.size());
    std::vector<std::vector<std::vector<C>>> x;
    for (const auto& c : basis) {
      std::vector<std::vector<C>> m(n, std::vector<C>(n));
      for (int a = 0; a < L.dim(); ++a)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m[i][j] += c[a] * static_cast<double>(L.matrix(a)[i][j]);
      x.push_back(m);
    }
    for (std::size_t r = 0; r < x.size(); ++r) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(x[r][i][j] - std::conj(x[r][j][i])), 0.0, 1e-14);
      for (std::size_t s = 0; s < x.size(); ++s) {
        C tr = 0;
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) tr += x[r][i][k] * x[s][k][i];
        EXPECT_NEAR(std::abs(tr - C(r == s ? 1.0 : 0.0)), 0.0, 1e-14);
      }
      // X_r^2 against the rational table entry
      std::vector<std::vector<C>> sq(n, std::vector<C>(n)), tab(n, std::vector<C>(n));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) sq[i][j] += x[r][i][k] * x[r][k][j];
      for (const auto& t : table.entries[r].terms) {
        const RationalMatrix p = mat_mul(to_rational(L.matrix(t.left)), to_rational(L.matrix(t.right)));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) tab[i][j] += t.coeff.get_d() * p[i][j].get_d();
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(sq[i][j] - tab[i][j]), 0.0, 1e-14);
    }
  }
}

TEST(Lie, FiniteRepIsRepresentation) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    for (int p = 0; p <= n - 1; ++p) {
      const Weight w = p == 0 ? L.zero_weight() : L.fundamental(p - 1);
      const FiniteRep rep = finite_rep(L, w);
      for (int a = 0; a < L.dim(); ++a)
        for (int b = 0; b < L.dim(); ++b) {
          const RationalMatrix comm = mat_sub(mat_mul(rep.matrix(a), rep.matrix(b)), mat_mul(rep.matrix(b), rep.matrix(a)));
          RationalMatrix rebuilt(rep.dim(), RationalColumn(rep.dim()));
          for (const auto& t : L.bracket(a, b))
            for (int i = 0; i < rep.dim(); ++i)
              for (int j = 0; j < rep.dim(); ++j) rebuilt[i][j] += t.coeff * rep.matrix(t.gen)[i][j];
          ASSERT_EQ(comm, rebuilt);
        }
    }
  }
}

// (Lambda | Lambda + 2 rho) for Lambda_p of sl_n is p (n - p) (n + 1) / n.
TEST(Lie, CasimirEigenvalueOnTopSpaces) {
  for (int n = 2; n <= 4; ++n) {
    const LieData L = build_sl(n);
    for (int p = 0; p <= n - 1; ++p) {
      const Weight w = p == 0 ? L.zero_weight() : L.fundamental(p - 1);
      const Rational expected = frac(p * (n - p) * (n + 1), n);
      Weight w2rho = w;
      for (auto& x : w2rho.labels) x += 2;
      EXPECT_EQ(L.weight_form(w, w2rho), expected);
      const FiniteRep rep = finite_rep(L, w);
      RationalMatrix c(rep.dim(), RationalColumn(rep.dim()));
      for (const auto& t : squared_table(L).casimir()) {
        const RationalMatrix prod = mat_mul(rep.matrix(t.left), rep.matrix(t.right));
        for (int i = 0; i < rep.dim(); ++i)
          for (int j = 0; j < rep.dim(); ++j) c[i][j] += t.coeff * prod[i][j];
      }
      for (int i = 0; i < rep.dim(); ++i)
        for (int j = 0; j < rep.dim(); ++j) EXPECT_EQ(c[i][j], i == j ? expected : Rational(0));
    }
  }
}

TEST(Lie, ConformalDataAtLevelOne) {
  const LieData L2 = build_sl(2);
  EXPECT_EQ(conformal_weight(L2, L2.fundamental(0), 1), frac(1, 4));
  EXPECT_EQ(conformal_weight(L2, L2.zero_weight(), 1), Rational(0));
  for (int n = 2; n <= 4; ++n) EXPECT_EQ(central_charge(build_sl(n), 1), Rational(n - 1));
  EXPECT_EQ(central_charge(L2, 2), frac(3, 2));
}

TEST(Lie, LevelAndSupportChecks) {
  const LieData L = build_sl(2);
  EXPECT_TRUE(in_level(L, L.fundamental(0), 1));
  EXPECT_FALSE(in_level(L, Weight{{2}}, 1));
  EXPECT_THROW(finite_rep(L, Weight{{2}}), Error);
  EXPECT_THROW(finite_rep(L, Weight{{-1}}), Error);
}
