#pragma once

// Exact linear algebra over the rationals. Elimination is fraction-free
// (Bareiss): each row is scaled to integers, and every intermediate entry is
// a minor of the scaled matrix, so divisions are exact.

#include <cstddef>
#include <vector>

#include "wzw/error.hpp"
#include "wzw/rational.hpp"

namespace wzw {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalColumn = std::vector<Rational>;

struct Echelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

inline std::vector<std::vector<Integer>> clear_denominators(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Integer l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> r;
    r.reserve(row.size());
    for (const auto& q : row) r.push_back(q.get_num() * (l / q.get_den()));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Fraction-free forward elimination followed by exact back substitution.
inline Echelon row_reduce(const RationalMatrix& m) {
  Echelon result;
  if (m.empty()) return result;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  for (const auto& r : m)
    if (r.size() != cols) throw Error(Errc::invalid_argument, "ragged matrix");

  auto a = detail::clear_denominators(m);
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    result.pivots.push_back(c);
    ++r;
  }

  RationalMatrix red(r, RationalColumn(cols));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) red[i][j] = Rational(a[i][j]);
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = result.pivots[i];
    const Rational inv = 1 / red[i][pc];
    for (std::size_t j = pc; j < cols; ++j) red[i][j] *= inv;
    for (std::size_t k = 0; k < i; ++k) {
      if (red[k][pc] == 0) continue;
      const Rational f = red[k][pc];
      for (std::size_t j = pc; j < cols; ++j) red[k][j] -= f * red[i][j];
    }
  }
  result.reduced = std::move(red);
  return result;
}

inline std::size_t rank(const RationalMatrix& m) { return row_reduce(m).rank(); }

enum class SolutionKind { unique, family, infeasible };

/// Solution set of A x = b: particular + span(directions).
struct AffineSolution {
  SolutionKind kind = SolutionKind::infeasible;
  RationalColumn particular;
  std::vector<RationalColumn> directions;
  std::size_t rank = 0;
};

inline AffineSolution solve_affine(const RationalMatrix& a, const RationalColumn& b) {
  if (a.size() != b.size()) throw Error(Errc::invalid_argument, "row count mismatch");
  AffineSolution sol;
  const std::size_t unknowns = a.empty() ? 0 : a.front().size();
  RationalMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  if (aug.empty()) {
    sol.kind = unknowns == 0 ? SolutionKind::unique : SolutionKind::family;
    sol.particular.assign(unknowns, Rational(0));
    for (std::size_t j = 0; j < unknowns; ++j) {
      RationalColumn d(unknowns);
      d[j] = 1;
      sol.directions.push_back(std::move(d));
    }
    return sol;
  }
  Echelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == unknowns) {
    sol.kind = SolutionKind::infeasible;
    sol.rank = e.rank() - 1;
    return sol;
  }
  sol.rank = e.rank();
  sol.particular.assign(unknowns, Rational(0));
  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t i = 0; i < e.rank(); ++i) {
    is_pivot[e.pivots[i]] = true;
    sol.particular[e.pivots[i]] = e.reduced[i][unknowns];
  }
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    RationalColumn d(unknowns);
    d[free] = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) d[e.pivots[i]] = -e.reduced[i][free];
    sol.directions.push_back(std::move(d));
  }
  sol.kind = sol.directions.empty() ? SolutionKind::unique : SolutionKind::family;
  return sol;
}

inline RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) return {};
  RationalMatrix t(m.front().size(), RationalColumn(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// Inverse of a nonsingular square matrix.
inline RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix aug(n, RationalColumn(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(Errc::invalid_argument, "inverse of non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = row_reduce(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1)
    throw Error(Errc::invalid_argument, "singular matrix");
  RationalMatrix inv(n, RationalColumn(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.reduced[i][n + j];
  return inv;
}

inline RationalColumn multiply(const RationalMatrix& m, const RationalColumn& v) {
  RationalColumn out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
  return out;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  RationalMatrix out(a.size(), RationalColumn(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace wzw
