#pragma once

// Finite-dimensional data for sl_n in the Chevalley basis
// {E_alpha (alpha > 0), H_i, F_alpha}, with the trace form (X|Y) = Tr(XY).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "wzw/error.hpp"
#include "wzw/linalg.hpp"
#include "wzw/rational.hpp"

namespace wzw {

enum class GenKind { raising, cartan, lowering };

struct BracketTerm {
  int gen;
  Rational coeff;
};

/// Dominant weights are written in Dynkin labels <Lambda, alpha_i^vee>.
struct Weight {
  std::vector<int> labels;
  bool is_zero() const {
    return std::all_of(labels.begin(), labels.end(), [](int x) { return x == 0; });
  }
  friend bool operator==(const Weight&, const Weight&) = default;
};

using IntMatrix = std::vector<std::vector<int>>;

class LieData {
 public:
  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  int dim() const { return n_ * n_ - 1; }
  int dual_coxeter() const { return n_; }
  int num_positive_roots() const { return static_cast<int>(roots_.size()); }

  /// Positive root alpha_{ij} = e_i - e_j, i < j (0-based), ordered by height then i.
  std::pair<int, int> positive_root(int p) const { return roots_.at(p); }
  int raising(int p) const { return p; }
  int cartan(int i) const { return num_positive_roots() + i; }
  int lowering(int p) const { return num_positive_roots() + rank() + p; }

  GenKind kind(int a) const {
    if (a < num_positive_roots()) return GenKind::raising;
    if (a < num_positive_roots() + rank()) return GenKind::cartan;
    return GenKind::lowering;
  }
  /// Chevalley anti-involution on basis indices: E_alpha <-> F_alpha, H_i fixed.
  int omega(int a) const { return omega_.at(a); }
  const std::string& name(int a) const { return names_.at(a); }
  const IntMatrix& matrix(int a) const { return matrices_.at(a); }
  /// (row, col) of the matrix unit of a root vector; (i, i) for H_i.
  std::pair<int, int> matrix_unit_of(int a) const { return unit_.at(a); }

  const std::vector<BracketTerm>& bracket(int a, int b) const { return bracket_[a * dim() + b]; }
  const Rational& form(int a, int b) const { return form_[a * dim() + b]; }

  /// Cartan matrix entry (alpha_i|alpha_j).
  int cartan_entry(int i, int j) const { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); }

  /// (Lambda_i|Lambda_j) = (A^{-1})_{ij} = min(i,j)(n - max(i,j))/n, 1-based.
  Rational fundamental_form(int i, int j) const {
    int a = std::min(i, j) + 1, b = std::max(i, j) + 1;
    return frac(a * (n_ - b), n_);
  }

  Rational weight_form(const Weight& x, const Weight& y) const {
    Rational s = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (x.labels[i] != 0 && y.labels[j] != 0)
          s += fundamental_form(i, j) * (x.labels[i] * y.labels[j]);
    return s;
  }

  Weight rho() const { return Weight{std::vector<int>(rank(), 1)}; }
  Weight fundamental(int i) const {
    Weight w{std::vector<int>(rank(), 0)};
    w.labels.at(i) = 1;
    return w;
  }
  Weight zero_weight() const { return Weight{std::vector<int>(rank(), 0)}; }
  Weight highest_root() const {
    Weight w = zero_weight();
    if (rank() == 1) {
      w.labels[0] = 2;
    } else {
      w.labels.front() += 1;
      w.labels.back() += 1;
    }
    return w;
  }

  /// Coefficients of a traceless integer matrix in the Chevalley basis.
  std::vector<BracketTerm> decompose(const IntMatrix& m) const {
    std::vector<BracketTerm> out;
    for (int a = 0; a < dim(); ++a) {
      if (kind(a) == GenKind::cartan) continue;
      auto [r, c] = unit_[a];
      if (m[r][c] != 0) out.push_back({a, Rational(m[r][c])});
    }
    int cumulative = 0;
    for (int i = 0; i < rank(); ++i) {
      cumulative += m[i][i];
      if (cumulative != 0) out.push_back({cartan(i), Rational(cumulative)});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.gen < y.gen; });
    return out;
  }

 private:
  friend LieData build_sl(int n);

  int n_ = 0;
  std::vector<std::pair<int, int>> roots_;
  std::vector<std::pair<int, int>> unit_;
  std::vector<int> omega_;
  std::vector<std::string> names_;
  std::vector<IntMatrix> matrices_;
  std::vector<std::vector<BracketTerm>> bracket_;
  std::vector<Rational> form_;
};

inline IntMatrix int_product(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline LieData build_sl(int n) {
  if (n < 2) throw Error(Errc::invalid_rank, "sl_n requires n >= 2, got " + std::to_string(n));
  LieData L;
  L.n_ = n;
  for (int h = 1; h < n; ++h)
    for (int i = 0; i + h < n; ++i) L.roots_.emplace_back(i, i + h);

  const int P = L.num_positive_roots();
  const int dim = L.dim();
  L.unit_.resize(dim);
  L.omega_.resize(dim);
  L.names_.resize(dim);
  L.matrices_.assign(dim, IntMatrix(n, std::vector<int>(n, 0)));
  auto label = [n](int i, int j) {
    return n == 2 ? std::string() : std::to_string(i + 1) + std::to_string(j + 1);
  };
  for (int p = 0; p < P; ++p) {
    auto [i, j] = L.roots_[p];
    L.unit_[L.raising(p)] = {i, j};
    L.unit_[L.lowering(p)] = {j, i};
    L.omega_[L.raising(p)] = L.lowering(p);
    L.omega_[L.lowering(p)] = L.raising(p);
    L.names_[L.raising(p)] = "E" + label(i, j);
    L.names_[L.lowering(p)] = "F" + label(j, i);
    L.matrices_[L.raising(p)][i][j] = 1;
    L.matrices_[L.lowering(p)][j][i] = 1;
  }
  for (int i = 0; i < n - 1; ++i) {
    const int a = L.cartan(i);
    L.unit_[a] = {i, i};
    L.omega_[a] = a;
    L.names_[a] = n == 2 ? "H" : "H" + std::to_string(i + 1);
    L.matrices_[a][i][i] = 1;
    L.matrices_[a][i + 1][i + 1] = -1;
  }

  L.bracket_.resize(static_cast<std::size_t>(dim) * dim);
  L.form_.resize(static_cast<std::size_t>(dim) * dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      IntMatrix ab = int_product(L.matrices_[a], L.matrices_[b]);
      IntMatrix ba = int_product(L.matrices_[b], L.matrices_[a]);
      int trace = 0;
      for (int i = 0; i < n; ++i) {
        trace += ab[i][i];
        for (int j = 0; j < n; ++j) ab[i][j] -= ba[i][j];
      }
      L.bracket_[a * dim + b] = L.decompose(ab);
      L.form_[a * dim + b] = trace;
    }
  }
  return L;
}

/// Exhaustive Jacobi identity check over all basis triples.
inline bool jacobi_holds(const LieData& L) {
  const int d = L.dim();
  auto bracket_vec = [&](const std::vector<Rational>& x, int c) {
    std::vector<Rational> out(d);
    for (int a = 0; a < d; ++a)
      if (x[a] != 0)
        for (const auto& t : L.bracket(a, c)) out[t.gen] += x[a] * t.coeff;
    return out;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        std::vector<Rational> ab(d), bc(d), ca(d);
        for (const auto& t : L.bracket(a, b)) ab[t.gen] += t.coeff;
        for (const auto& t : L.bracket(b, c)) bc[t.gen] += t.coeff;
        for (const auto& t : L.bracket(c, a)) ca[t.gen] += t.coeff;
        auto x = bracket_vec(ab, c);
        auto y = bracket_vec(bc, a);
        auto z = bracket_vec(ca, b);
        for (int i = 0; i < d; ++i)
          if (x[i] + y[i] + z[i] != 0) return false;
      }
  return true;
}

/// Symmetry and invariance ([X,Y]|Z) = (X|[Y,Z]) on all basis triples.
inline bool form_is_invariant(const LieData& L) {
  const int d = L.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (L.form(a, b) != L.form(b, a)) return false;
      for (int c = 0; c < d; ++c) {
        Rational lhs = 0, rhs = 0;
        for (const auto& t : L.bracket(a, b)) lhs += t.coeff * L.form(t.gen, c);
        for (const auto& t : L.bracket(b, c)) rhs += t.coeff * L.form(a, t.gen);
        if (lhs != rhs) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Squares of the Hermitian orthonormal basis.
//
// Cartan part: X_i = (H_1 + 2 H_2 + ... + i H_i) / sqrt(i(i+1)).
// Each positive root contributes (E+F)/sqrt2 and i(E-F)/sqrt2.
// Only the squares X_r (x) X_r enter exact code; they are rational.

struct QuadraticTerm {
  int left;
  int right;
  Rational coeff;
};

struct SquaredGenerator {
  std::string label;
  std::vector<QuadraticTerm> terms;
};

struct SquaredGeneratorTable {
  std::vector<SquaredGenerator> entries;

  std::size_t size() const { return entries.size(); }

  /// Sum over r of the squares, merged: the quadratic Casimir tensor.
  std::vector<QuadraticTerm> casimir() const {
    std::vector<QuadraticTerm> merged;
    for (const auto& e : entries)
      for (const auto& t : e.terms) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const QuadraticTerm& m) {
          return m.left == t.left && m.right == t.right;
        });
        if (it == merged.end())
          merged.push_back(t);
        else
          it->coeff += t.coeff;
      }
    std::erase_if(merged, [](const QuadraticTerm& t) { return t.coeff == 0; });
    std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) {
      return std::pair(x.left, x.right) < std::pair(y.left, y.right);
    });
    return merged;
  }
};

inline SquaredGeneratorTable squared_table(const LieData& L) {
  SquaredGeneratorTable table;
  for (int i = 1; i <= L.rank(); ++i) {
    SquaredGenerator s;
    s.label = "cartan" + std::to_string(i);
    const Rational norm = frac(1, i * (i + 1));
    for (int j = 1; j <= i; ++j)
      for (int jj = 1; jj <= i; ++jj)
        s.terms.push_back({L.cartan(j - 1), L.cartan(jj - 1), norm * (j * jj)});
    table.entries.push_back(std::move(s));
  }
  const Rational half = frac(1, 2);
  for (int p = 0; p < L.num_positive_roots(); ++p) {
    const int e = L.raising(p), f = L.lowering(p);
    const std::string root = L.name(e).substr(1);
    table.entries.push_back({"sym" + root, {{e, e, half}, {e, f, half}, {f, e, half}, {f, f, half}}});
    table.entries.push_back({"asym" + root, {{e, e, -half}, {e, f, half}, {f, e, half}, {f, f, -half}}});
  }
  return table;
}

/// Complex coefficients of each X_r in the Chevalley basis (same order as
/// squared_table). Floating point; used only by the simulator.
inline std::vector<std::vector<std::complex<double>>> hermitian_basis(const LieData& L) {
  using C = std::complex<double>;
  std::vector<std::vector<C>> out;
  for (int i = 1; i <= L.rank(); ++i) {
    std::vector<C> x(L.dim(), C(0));
    const double s = 1.0 / std::sqrt(static_cast<double>(i * (i + 1)));
    for (int j = 1; j <= i; ++j) x[L.cartan(j - 1)] = C(j * s);
    out.push_back(std::move(x));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < L.num_positive_roots(); ++p) {
    std::vector<C> sym(L.dim(), C(0)), asym(L.dim(), C(0));
    sym[L.raising(p)] = sym[L.lowering(p)] = C(r);
    asym[L.raising(p)] = C(0, r);
    asym[L.lowering(p)] = C(0, -r);
    out.push_back(std::move(sym));
    out.push_back(std::move(asym));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Top-space representations: exterior powers of the defining representation.

class FiniteRep {
 public:
  int dim() const { return static_cast<int>(basis_.size()); }
  const Weight& highest_weight() const { return highest_; }
  /// Matrix of Chevalley generator a; entry [row][col].
  const RationalMatrix& matrix(int a) const { return matrices_.at(a); }
  /// Basis vector i is e_{s_1} ^ ... ^ e_{s_p} for the listed subset (0-based).
  const std::vector<int>& subset(int i) const { return basis_.at(i); }

 private:
  friend FiniteRep finite_rep(const LieData& L, const Weight& w);
  Weight highest_;
  std::vector<std::vector<int>> basis_;
  std::vector<RationalMatrix> matrices_;
};

inline void check_dominant(const LieData& L, const Weight& w) {
  if (static_cast<int>(w.labels.size()) != L.rank())
    throw Error(Errc::weight_out_of_range, "weight has wrong number of Dynkin labels");
  for (int x : w.labels)
    if (x < 0) throw Error(Errc::weight_out_of_range, "weight is not dominant");
}

inline FiniteRep finite_rep(const LieData& L, const Weight& w) {
  check_dominant(L, w);
  int p = 0;
  const int total = std::accumulate(w.labels.begin(), w.labels.end(), 0);
  if (total > 1)
    throw Error(Errc::unsupported_weight,
                "only the trivial representation and exterior powers of the defining "
                "representation are implemented");
  for (int i = 0; i < L.rank(); ++i)
    if (w.labels[i] == 1) p = i + 1;

  FiniteRep rep;
  rep.highest_ = w;
  const int n = L.n();
  std::vector<int> sel(n, 0);
  std::fill(sel.begin(), sel.begin() + p, 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (sel[i]) s.push_back(i);
    rep.basis_.push_back(std::move(s));
  } while (std::prev_permutation(sel.begin(), sel.end()));

  const int d = rep.dim();
  auto index_of = [&](const std::vector<int>& s) {
    return static_cast<int>(std::find(rep.basis_.begin(), rep.basis_.end(), s) - rep.basis_.begin());
  };
  rep.matrices_.assign(L.dim(), RationalMatrix(d, RationalColumn(d)));
  for (int a = 0; a < L.dim(); ++a) {
    const IntMatrix& m = L.matrix(a);
    for (int col = 0; col < d; ++col) {
      const auto& s = rep.basis_[col];
      // X(e_{s1} ^ ... ^ e_{sp}) = sum_k e_{s1} ^ .. ^ X e_{sk} ^ .. ^ e_{sp}
      for (std::size_t k = 0; k < s.size(); ++k)
        for (int r = 0; r < n; ++r) {
          if (m[r][s[k]] == 0) continue;
          std::vector<int> t = s;
          t[k] = r;
          std::vector<int> sorted = t;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
          int inversions = 0;
          for (std::size_t x = 0; x < t.size(); ++x)
            for (std::size_t y = x + 1; y < t.size(); ++y)
              if (t[x] > t[y]) ++inversions;
          rep.matrices_[a][index_of(sorted)][col] += (inversions % 2 ? -1 : 1) * m[r][s[k]];
        }
    }
  }
  return rep;
}

/// h_Lambda = (Lambda|Lambda+2rho) / (2(k+h^vee)).
inline Rational conformal_weight(const LieData& L, const Weight& w, int level) {
  check_dominant(L, w);
  if (level + L.dual_coxeter() == 0) throw Error(Errc::invalid_argument, "k + h^vee = 0");
  Weight shifted = w;
  for (int i = 0; i < L.rank(); ++i) shifted.labels[i] += 2;
  return L.weight_form(w, shifted) / Rational(2 * (level + L.dual_coxeter()));
}

/// c_k = k dim(g) / (k + h^vee).
inline Rational central_charge(const LieData& L, int level) {
  if (level + L.dual_coxeter() == 0) throw Error(Errc::invalid_argument, "k + h^vee = 0");
  return frac(level * L.dim(), level + L.dual_coxeter());
}

/// Level-k dominance: <Lambda, theta^vee> = sum of labels <= k.
inline bool in_level(const LieData& L, const Weight& w, int level) {
  if (static_cast<int>(w.labels.size()) != L.rank()) return false;
  int s = 0;
  for (int x : w.labels) {
    if (x < 0) return false;
    s += x;
  }
  return s <= level;
}

}  // namespace wzw
