#pragma once

// Weyl modules over affine sl_n at level k, realized on PBW monomials
//   X_{a1,m1} X_{a2,m2} ... X_{ar,mr} v_t,   m1 <= m2 <= ... < 0,
// with ties broken by generator index and v_t a basis vector of the top space.

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wzw/error.hpp"
#include "wzw/lie.hpp"
#include "wzw/linalg.hpp"
#include "wzw/sparse.hpp"

namespace wzw {

/// One affine mode X_{gen, mode}; ordering is (mode, gen).
struct Letter {
  int mode;
  int gen;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

struct Monomial {
  std::vector<Letter> word;
  int top = 0;

  int degree() const {
    int d = 0;
    for (const auto& l : word) d -= l.mode;
    return d;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = static_cast<std::size_t>(m.top) * 0x9e3779b97f4a7c15ULL;
    for (const auto& l : m.word)
      h = (h ^ (static_cast<std::size_t>(l.mode + 64) << 16 ^ static_cast<std::size_t>(l.gen))) *
          0x100000001b3ULL;
    return h;
  }
};

using ModuleVector = SparseVector<Monomial>;

/// Mode of the affine Virasoro algebra. K is not a mode: it acts as the level.
struct Mode {
  enum class Kind { affine, virasoro };
  Kind kind = Kind::affine;
  int gen = 0;
  int number = 0;

  static Mode affine(int gen, int m) { return {Kind::affine, gen, m}; }
  static Mode virasoro(int m) { return {Kind::virasoro, 0, m}; }
};

inline std::string to_string(const LieData& L, const Monomial& m) {
  std::ostringstream os;
  for (const auto& l : m.word) os << L.name(l.gen) << "(" << l.mode << ") ";
  os << "v" << m.top;
  return os.str();
}

/// True when every term of v has the same degree (vacuously for v = 0).
inline bool is_homogeneous(const ModuleVector& v, int* degree = nullptr) {
  int d = -1;
  for (const auto& [m, c] : v) {
    if (d < 0) d = m.degree();
    if (m.degree() != d) return false;
  }
  if (degree) *degree = d < 0 ? 0 : d;
  return true;
}

class WeylModule {
 public:
  WeylModule(LieData algebra, int level, Weight weight, int max_degree)
      : L_(std::move(algebra)), level_(level), weight_(std::move(weight)), max_degree_(max_degree) {
    if (level < 1) throw Error(Errc::invalid_argument, "level must be a positive integer");
    if (max_degree < 0) throw Error(Errc::invalid_argument, "negative maximal degree");
    if (!in_level(L_, weight_, level_))
      throw Error(Errc::weight_out_of_range, "weight is not a dominant weight of level " +
                                                 std::to_string(level_));
    top_ = finite_rep(L_, weight_);
    casimir_ = squared_table(L_).casimir();
    sugawara_norm_ = frac(1, 2 * (level_ + L_.dual_coxeter()));
    build_words();
  }

  WeylModule(const WeylModule&) = delete;
  WeylModule& operator=(const WeylModule&) = delete;

  const LieData& algebra() const { return L_; }
  int level() const { return level_; }
  const Weight& weight() const { return weight_; }
  int max_degree() const { return max_degree_; }
  const FiniteRep& top() const { return top_; }
  const std::vector<QuadraticTerm>& casimir() const { return casimir_; }

  Rational conformal_weight() const { return wzw::conformal_weight(L_, weight_, level_); }
  Rational central_charge() const { return wzw::central_charge(L_, level_); }

  /// Distinct PBW words of degree d, sorted.
  const std::vector<std::vector<Letter>>& words(int d) const { return words_.at(d); }

  /// Degree-d basis: words(d) x top basis, word-major.
  std::vector<Monomial> basis(int d) const {
    check_degree(d);
    std::vector<Monomial> out;
    for (const auto& w : words_[d])
      for (int t = 0; t < top_.dim(); ++t) out.push_back({w, t});
    return out;
  }
  std::size_t dimension(int d) const { return words(d).size() * static_cast<std::size_t>(top_.dim()); }

  ModuleVector top_vector(int t) const { return ModuleVector(Monomial{{}, t}); }

  /// X_{gen,m} on a vector. Throws truncation-violation if the result
  /// would leave degrees 0..max_degree.
  ModuleVector apply(int gen, int m, const ModuleVector& v) const {
    ModuleVector out;
    for (const auto& [mono, c] : v) {
      if (mono.degree() - m > max_degree_)
        throw Error(Errc::truncation_violation, "mode " + std::to_string(m) + " on degree " +
                                                    std::to_string(mono.degree()) +
                                                    " exceeds max degree");
      out.add_scaled(act(gen, m, mono), c);
    }
    return out;
  }

  ModuleVector apply(const Mode& x, const ModuleVector& v) const {
    return x.kind == Mode::Kind::affine ? apply(x.gen, x.number, v) : sugawara(x.number, v);
  }

  /// Sugawara L_m = 1/(2(k+h^vee)) sum_r :X_r X_r:_m, normal ordered with
  /// annihilation-side modes (j >= 0) acting first.
  ModuleVector sugawara(int m, const ModuleVector& v) const {
    ModuleVector out;
    for (const auto& [mono, c] : v) {
      if (mono.degree() - m > max_degree_)
        throw Error(Errc::truncation_violation, "L(" + std::to_string(m) + ") on degree " +
                                                    std::to_string(mono.degree()) +
                                                    " exceeds max degree");
      out.add_scaled(virasoro_on(m, mono), c);
    }
    return out;
  }

  /// Contravariant pairing <b, u> with <x b, u> = <b, omega(x) u> and an
  /// orthonormal weight basis on the top space.
  Rational pairing(const Monomial& b, const ModuleVector& u) const {
    ModuleVector cur = degree_part(u, b.degree());
    for (const auto& l : b.word) {
      cur = apply(L_.omega(l.gen), -l.mode, cur);
      if (cur.empty()) return 0;
    }
    return cur.coefficient(Monomial{{}, b.top});
  }

  /// <b, u> for every b in basis(d), in basis order. Equal to G_d coords(u).
  std::vector<Rational> pairings(int d, const ModuleVector& u) const {
    check_degree(d);
    std::vector<Rational> out(dimension(d));
    const ModuleVector ud = degree_part(u, d);
    if (ud.empty()) return out;
    std::vector<ModuleVector> stack{ud};
    const std::vector<Letter>* prev = nullptr;
    std::size_t row = 0;
    for (const auto& w : words_[d]) {
      std::size_t common = 0;
      if (prev)
        while (common < prev->size() && common < w.size() && (*prev)[common] == w[common]) ++common;
      stack.resize(common + 1);
      for (std::size_t i = common; i < w.size(); ++i) {
        const ModuleVector& back = stack.back();
        stack.push_back(back.empty() ? ModuleVector{} : apply(L_.omega(w[i].gen), -w[i].mode, back));
      }
      for (int t = 0; t < top_.dim(); ++t) out[row++] = stack.back().coefficient(Monomial{{}, t});
      prev = &w;
    }
    return out;
  }

  /// Gram matrix G_d of the degree-d basis.
  RationalMatrix gram(int d) const {
    const auto b = basis(d);
    RationalMatrix g(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto col = pairings(d, ModuleVector(b[j]));
      for (std::size_t i = 0; i < b.size(); ++i) g[i].push_back(std::move(col[i]));
    }
    // columns were appended row by row; g[i][j] = <b_i, b_j>
    return g;
  }

  static ModuleVector degree_part(const ModuleVector& u, int d) {
    ModuleVector out;
    for (const auto& [m, c] : u)
      if (m.degree() == d) out.add(m, c);
    return out;
  }

 private:
  struct ActKey {
    int gen;
    int mode;
    Monomial mono;
    friend bool operator==(const ActKey&, const ActKey&) = default;
  };
  struct ActKeyHash {
    std::size_t operator()(const ActKey& k) const noexcept {
      return MonomialHash{}(k.mono) ^ (static_cast<std::size_t>(k.gen) * 0x51ed27ULL) ^
             (static_cast<std::size_t>(k.mode + 1024) << 40);
    }
  };

  void check_degree(int d) const {
    if (d < 0 || d > max_degree_)
      throw Error(Errc::truncation_violation, "degree " + std::to_string(d) + " outside 0.." +
                                                  std::to_string(max_degree_));
  }

  void build_words() {
    words_.assign(max_degree_ + 1, {});
    std::vector<Letter> cur;
    std::vector<std::vector<Letter>>* sink = nullptr;
    // letters are emitted in non-decreasing (mode, gen) order
    std::function<void(int, Letter)> extend = [&](int remaining, Letter min_letter) {
      if (remaining == 0) {
        sink->push_back(cur);
        return;
      }
      for (int m = std::max(min_letter.mode, -remaining); m <= -1; ++m)
        for (int g = (m == min_letter.mode ? min_letter.gen : 0); g < L_.dim(); ++g) {
          cur.push_back({m, g});
          extend(remaining + m, {m, g});
          cur.pop_back();
        }
    };
    for (int d = 0; d <= max_degree_; ++d) {
      sink = &words_[d];
      extend(d, Letter{-d, 0});
      std::sort(words_[d].begin(), words_[d].end());
    }
  }

  /// Core PBW straightening of X_{a,m} on a monomial, memoized.
  ModuleVector act(int a, int m, const Monomial& mono) const {
    const int deg = mono.degree();
    if (m > deg) return {};
    ActKey key{a, m, mono};
    {
      std::lock_guard lock(cache_mutex_);
      auto it = act_cache_.find(key);
      if (it != act_cache_.end()) return it->second;
    }
    ModuleVector out;
    if (mono.word.empty()) {
      if (m == 0) {
        const auto& mat = top_.matrix(a);
        for (int r = 0; r < top_.dim(); ++r)
          if (mat[r][mono.top] != 0) out.add(Monomial{{}, r}, mat[r][mono.top]);
      } else if (m < 0) {
        out.add(Monomial{{Letter{m, a}}, mono.top}, 1);
      }
    } else {
      const Letter first = mono.word.front();
      const Letter x{m, a};
      if (m < 0 && !(first < x)) {
        Monomial r = mono;
        r.word.insert(r.word.begin(), x);
        out.add(r, 1);
      } else {
        Monomial rest{std::vector<Letter>(mono.word.begin() + 1, mono.word.end()), mono.top};
        // X Y rest = Y (X rest) + [X, Y] rest
        const ModuleVector inner = act(a, m, rest);
        for (const auto& [mn, c] : inner) out.add_scaled(act(first.gen, first.mode, mn), c);
        for (const auto& t : L_.bracket(a, first.gen))
          out.add_scaled(act(t.gen, m + first.mode, rest), t.coeff);
        if (m + first.mode == 0 && L_.form(a, first.gen) != 0)
          out.add(rest, L_.form(a, first.gen) * m * level_);
      }
    }
    std::lock_guard lock(cache_mutex_);
    act_cache_.try_emplace(std::move(key), out);
    return out;
  }

  ModuleVector virasoro_on(int m, const Monomial& mono) const {
    const int d = mono.degree();
    if (m > d) return {};
    {
      std::lock_guard lock(cache_mutex_);
      auto it = vir_cache_.find(ActKey{-1, m, mono});
      if (it != vir_cache_.end()) return it->second;
    }
    ModuleVector out;
    const ModuleVector base(mono);
    for (const auto& t : casimir_) {
      // j <= -1: X_{a,j} X_{b,m-j}; only m - j <= d contributes
      for (int j = m - d; j <= -1; ++j) {
        ModuleVector tmp = act(t.right, m - j, mono);
        for (const auto& [mn, c] : tmp) out.add_scaled(act(t.left, j, mn), c * t.coeff);
      }
      // j >= 0: X_{b,m-j} X_{a,j}
      for (int j = 0; j <= d; ++j) {
        ModuleVector tmp = act(t.left, j, mono);
        for (const auto& [mn, c] : tmp) out.add_scaled(act(t.right, m - j, mn), c * t.coeff);
      }
    }
    out *= sugawara_norm_;
    std::lock_guard lock(cache_mutex_);
    vir_cache_.try_emplace(ActKey{-1, m, mono}, out);
    return out;
  }

  LieData L_;
  int level_;
  Weight weight_;
  int max_degree_;
  FiniteRep top_;
  std::vector<QuadraticTerm> casimir_;
  Rational sugawara_norm_;
  std::vector<std::vector<std::vector<Letter>>> words_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<ActKey, ModuleVector, ActKeyHash> act_cache_;
  mutable std::unordered_map<ActKey, ModuleVector, ActKeyHash> vir_cache_;
};

// ---------------------------------------------------------------------------
// Structure checks

struct RelationFailure {
  std::string relation;
  Monomial vector;
  int m = 0;
  int n = 0;
};

struct RelationReport {
  std::size_t checks = 0;
  std::vector<RelationFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {
inline bool fits(const WeylModule& M, int degree, std::initializer_list<int> shifts) {
  int d = degree;
  for (int s : shifts) {
    d -= s;
    if (d > M.max_degree()) return false;
  }
  return true;
}
}  // namespace detail

/// [X_m, Y_n] = [X,Y]_{m+n} + m (X|Y) delta_{m+n,0} k on every basis vector
/// of degree <= max_degree where all intermediate degrees stay in range.
inline RelationReport verify_affine(const WeylModule& M, int max_mode, int max_degree) {
  RelationReport rep;
  const auto& L = M.algebra();
  for (int d = 0; d <= std::min(max_degree, M.max_degree()); ++d)
    for (const auto& b : M.basis(d)) {
      const ModuleVector u(b);
      for (int m = -max_mode; m <= max_mode; ++m)
        for (int n = -max_mode; n <= max_mode; ++n) {
          if (!detail::fits(M, d, {n, m}) || !detail::fits(M, d, {m, n})) continue;
          for (int a = 0; a < L.dim(); ++a)
            for (int c = 0; c < L.dim(); ++c) {
              ModuleVector lhs = M.apply(a, m, M.apply(c, n, u)) - M.apply(c, n, M.apply(a, m, u));
              ModuleVector rhs;
              for (const auto& t : L.bracket(a, c)) rhs.add_scaled(M.apply(t.gen, m + n, u), t.coeff);
              if (m + n == 0) rhs.add_scaled(u, L.form(a, c) * m * M.level());
              ++rep.checks;
              if (!(lhs == rhs))
                rep.failures.push_back({"[" + L.name(a) + "," + L.name(c) + "]", b, m, n});
            }
        }
    }
  return rep;
}

/// [L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3-m) delta, and
/// [L_m, X_n] = -n X_{m+n}, and L_0 = h + degree.
inline RelationReport verify_virasoro(const WeylModule& M, int max_mode, int max_degree) {
  RelationReport rep;
  const auto& L = M.algebra();
  const Rational c = M.central_charge();
  const Rational h = M.conformal_weight();
  for (int d = 0; d <= std::min(max_degree, M.max_degree()); ++d)
    for (const auto& b : M.basis(d)) {
      const ModuleVector u(b);
      ++rep.checks;
      if (!(M.sugawara(0, u) == (h + d) * u)) rep.failures.push_back({"L0 eigenvalue", b, 0, 0});
      for (int m = -max_mode; m <= max_mode; ++m)
        for (int n = -max_mode; n <= max_mode; ++n) {
          if (!detail::fits(M, d, {n, m}) || !detail::fits(M, d, {m, n})) continue;
          ModuleVector lhs = M.sugawara(m, M.sugawara(n, u)) - M.sugawara(n, M.sugawara(m, u));
          ModuleVector rhs = Rational(m - n) * M.sugawara(m + n, u);
          if (m + n == 0) rhs.add_scaled(u, c * frac(m * m * m - m, 12));
          ++rep.checks;
          if (!(lhs == rhs)) rep.failures.push_back({"[L,L]", b, m, n});
          for (int a = 0; a < L.dim(); ++a) {
            ModuleVector l2 = M.sugawara(m, M.apply(a, n, u)) - M.apply(a, n, M.sugawara(m, u));
            ModuleVector r2 = Rational(-n) * M.apply(a, m + n, u);
            ++rep.checks;
            if (!(l2 == r2)) rep.failures.push_back({"[L," + L.name(a) + "]", b, m, n});
          }
        }
    }
  return rep;
}

/// <x u, v> = <u, omega(x) v> for all basis u, v and affine modes |x| <= max_mode.
inline RelationReport verify_contravariance(const WeylModule& M, int max_mode, int max_degree) {
  RelationReport rep;
  const auto& L = M.algebra();
  for (int du = 0; du <= std::min(max_degree, M.max_degree()); ++du)
    for (int m = -max_mode; m <= max_mode; ++m) {
      const int dv = du - m;
      if (dv < 0 || dv > std::min(max_degree, M.max_degree())) continue;
      const auto bu = M.basis(du);
      const auto bv = M.basis(dv);
      for (int a = 0; a < L.dim(); ++a)
        for (const auto& u : bu) {
          const ModuleVector xu = M.apply(a, m, ModuleVector(u));
          for (const auto& v : bv) {
            const Rational lhs = M.pairing(v, xu);  // <v, x u>
            const ModuleVector wv = M.apply(L.omega(a), -m, ModuleVector(v));
            const Rational rhs = M.pairing(u, wv);  // <u, omega(x) v>
            ++rep.checks;
            if (lhs != rhs) rep.failures.push_back({"contravariance " + L.name(a), u, m, 0});
          }
        }
      for (const auto& u : bu) {
        const ModuleVector lu = M.sugawara(m, ModuleVector(u));
        for (const auto& v : bv) {
          const Rational lhs = M.pairing(v, lu);
          const Rational rhs = M.pairing(u, M.sugawara(-m, ModuleVector(v)));
          ++rep.checks;
          if (lhs != rhs) rep.failures.push_back({"contravariance L", u, m, 0});
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Irreducible quotient slices: the Gram form restricted to a maximal set of
// independent basis vectors is nondegenerate, so quotient coordinates of u are
// G_BB^{-1} (<b, u>)_{b in B}.

struct QuotientSlice {
  int degree = 0;
  std::vector<std::size_t> representatives;  // indices into basis(degree)
  RationalMatrix gram_inverse;               // (G_BB)^{-1}
  std::size_t dim() const { return representatives.size(); }
};

inline QuotientSlice quotient_slice(const WeylModule& M, int d) {
  QuotientSlice q;
  q.degree = d;
  const RationalMatrix g = M.gram(d);
  if (g.empty()) return q;
  const Echelon e = row_reduce(g);
  q.representatives = e.pivots;
  RationalMatrix sub(e.pivots.size(), RationalColumn(e.pivots.size()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < e.pivots.size(); ++j) sub[i][j] = g[e.pivots[i]][e.pivots[j]];
  q.gram_inverse = sub.empty() ? RationalMatrix{} : inverse(sub);
  return q;
}

inline RationalColumn quotient_coordinates(const WeylModule& M, const QuotientSlice& q,
                                           const ModuleVector& u) {
  const auto p = M.pairings(q.degree, u);
  RationalColumn sel(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) sel[i] = p[q.representatives[i]];
  return multiply(q.gram_inverse, sel);
}

}  // namespace wzw
