#pragma once

// Frenkel-Kac realization of the basic representation of affine sl_n on the
// lattice vertex algebra of the A_{n-1} root lattice. Fully independent of
// the PBW code path: vertex operators are expanded from their exponential
// factors with exact rationals.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wzw/error.hpp"
#include "wzw/lie.hpp"
#include "wzw/linalg.hpp"
#include "wzw/sparse.hpp"

namespace wzw {

using LatticePoint = std::vector<int>;  // coordinates in the simple-root basis

struct RootLattice {
  int rank = 0;
  std::vector<std::vector<int>> gram;  // (alpha_i|alpha_j)

  int inner(const LatticePoint& x, const LatticePoint& y) const {
    int s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += x[i] * gram[i][j] * y[j];
    return s;
  }
  int norm(const LatticePoint& x) const { return inner(x, x); }
  LatticePoint simple(int i) const {
    LatticePoint p(rank, 0);
    p.at(i) = 1;
    return p;
  }
  LatticePoint zero() const { return LatticePoint(rank, 0); }
};

inline RootLattice type_a_root_lattice(int rank) {
  if (rank < 1) throw Error(Errc::invalid_rank, "root lattice rank must be >= 1");
  RootLattice q;
  q.rank = rank;
  q.gram.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    q.gram[i][i] = 2;
    if (i + 1 < rank) q.gram[i][i + 1] = q.gram[i + 1][i] = -1;
  }
  return q;
}

/// Orientation of the nontrivial signs on simple-root pairs.
enum class CocycleConvention {
  lower,  // eps(a_i, a_j) = +1 for i <= j, (-1)^{(a_i|a_j)} for i > j
  upper,  // eps(a_i, a_j) = +1 for i >= j, (-1)^{(a_i|a_j)} for i < j
};

inline std::string_view convention_name(CocycleConvention c) {
  return c == CocycleConvention::lower ? "lower" : "upper";
}

/// Bimultiplicative sign eps(beta, gamma) = prod_{ij} eps(a_i,a_j)^{beta_i gamma_j}.
class Cocycle {
 public:
  Cocycle(const RootLattice& q, CocycleConvention conv) : q_(q), conv_(conv) {
    odd_.assign(q.rank, std::vector<int>(q.rank, 0));
    for (int i = 0; i < q.rank; ++i)
      for (int j = 0; j < q.rank; ++j) {
        const bool signed_pair = conv == CocycleConvention::lower ? i > j : i < j;
        odd_[i][j] = signed_pair && (q.gram[i][j] % 2 != 0) ? 1 : 0;
      }
  }

  int operator()(const LatticePoint& beta, const LatticePoint& gamma) const {
    long e = 0;
    for (int i = 0; i < q_.rank; ++i)
      for (int j = 0; j < q_.rank; ++j)
        if (odd_[i][j]) e += static_cast<long>(beta[i]) * gamma[j];
    return (e % 2 == 0) ? 1 : -1;
  }

  CocycleConvention convention() const { return conv_; }

 private:
  RootLattice q_;
  CocycleConvention conv_;
  std::vector<std::vector<int>> odd_;
};

/// Occupation of one oscillator alpha_{dir,-n}, n >= 1.
struct Oscillator {
  int dir;
  int n;
  friend auto operator<=>(const Oscillator&, const Oscillator&) = default;
};

/// prod alpha_{dir,-n} (.) e^beta; oscillators kept sorted (they commute).
struct LatticeState {
  LatticePoint beta;
  std::vector<Oscillator> osc;

  int oscillator_degree() const {
    int d = 0;
    for (const auto& o : osc) d += o.n;
    return d;
  }
  friend auto operator<=>(const LatticeState&, const LatticeState&) = default;
};

using FockVector = SparseVector<LatticeState>;

class LatticeVOA {
 public:
  LatticeVOA(RootLattice q, CocycleConvention conv, int max_degree = 4)
      : q_(std::move(q)), eps_(q_, conv), max_degree_(max_degree) {
    // (alpha_i|alpha_j)^{-1} for the conformal vector
    RationalMatrix g(q_.rank, RationalColumn(q_.rank));
    for (int i = 0; i < q_.rank; ++i)
      for (int j = 0; j < q_.rank; ++j) g[i][j] = q_.gram[i][j];
    gram_inverse_ = inverse(g);
  }

  const RootLattice& lattice() const { return q_; }
  const Cocycle& cocycle() const { return eps_; }
  int max_degree() const { return max_degree_; }

  int degree(const LatticeState& s) const { return q_.norm(s.beta) / 2 + s.oscillator_degree(); }

  FockVector vacuum() const { return FockVector(LatticeState{q_.zero(), {}}); }
  FockVector ground(const LatticePoint& beta) const { return FockVector(LatticeState{beta, {}}); }

  /// Heisenberg mode gamma_n for gamma = sum c_i alpha_i:
  /// [gamma_m, delta_n] = m (gamma|delta) delta_{m+n,0}, gamma_0 = (gamma|beta).
  FockVector heisenberg(const LatticePoint& gamma, int n, const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v) {
      if (n < 0) {
        check_room(degree(s) - n);
        for (int i = 0; i < q_.rank; ++i) {
          if (gamma[i] == 0) continue;
          LatticeState t = s;
          t.osc.insert(std::upper_bound(t.osc.begin(), t.osc.end(), Oscillator{i, -n}),
                       Oscillator{i, -n});
          out.add(t, c * gamma[i]);
        }
      } else if (n == 0) {
        out.add(s, c * q_.inner(gamma, s.beta));
      } else {
        // derivation: remove one alpha_{j,-n} with weight n (gamma|alpha_j)
        for (std::size_t k = 0; k < s.osc.size(); ++k) {
          if (s.osc[k].n != n) continue;
          const int pair = q_.inner(gamma, q_.simple(s.osc[k].dir));
          if (pair == 0) continue;
          LatticeState t = s;
          t.osc.erase(t.osc.begin() + static_cast<long>(k));
          out.add(t, c * (n * pair));
        }
      }
    }
    return out;
  }

  FockVector heisenberg(int dir, int n, const FockVector& v) const {
    return heisenberg(q_.simple(dir), n, v);
  }

  /// Coefficient of z^{-m-1} of
  ///   Gamma_gamma(z) = E^-(gamma,z) E^+(gamma,z) e^gamma z^{gamma_0} eps(gamma, .)
  /// with E^{+-} = exp(+- sum_{k>0} gamma_{-+k} z^{+-k} / k).
  FockVector vertex(const LatticePoint& gamma, int m, const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v) {
      const int pair = q_.inner(gamma, s.beta);
      const int sign = eps_(gamma, s.beta);
      LatticePoint shifted = s.beta;
      for (int i = 0; i < q_.rank; ++i) shifted[i] += gamma[i];
      const int osc_deg = s.oscillator_degree();
      for (int p = 0; p <= osc_deg; ++p) {
        const int qpow = p - pair - m - 1;
        if (qpow < 0) continue;
        FockVector lowered = exp_part(gamma, p, -1, FockVector(s));
        if (lowered.empty()) continue;
        FockVector moved;
        for (const auto& [t, ct] : lowered) moved.add(LatticeState{shifted, t.osc}, ct);
        for (const auto& [t, ct] : moved) check_room(degree(t) + qpow);
        FockVector raised = exp_part(gamma, qpow, +1, moved);
        out.add_scaled(raised, c * sign);
      }
    }
    return out;
  }

  /// Free-boson Virasoro L_m = 1/2 sum_{ij} G^{-1}_{ij} sum_j :alpha_{i,j} alpha_{j,m-j}:.
  FockVector virasoro(int m, const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v) {
      const int d = degree(s);
      if (m > d) continue;
      check_room(d - m);
      const FockVector u(s);
      for (int i = 0; i < q_.rank; ++i)
        for (int k = 0; k < q_.rank; ++k) {
          if (gram_inverse_[i][k] == 0) continue;
          const Rational w = gram_inverse_[i][k] * c * frac(1, 2);
          for (int j = m - d; j <= -1; ++j)
            out.add_scaled(heisenberg(i, j, heisenberg(k, m - j, u)), w);
          for (int j = 0; j <= d; ++j) out.add_scaled(heisenberg(k, m - j, heisenberg(i, j, u)), w);
        }
    }
    return out;
  }

  /// All basis states of degree d (bounded lattice box search).
  std::vector<LatticeState> basis(int d) const {
    std::vector<LatticeState> out;
    const int bound = 2 * d + 1;
    LatticePoint beta(q_.rank, -bound);
    while (true) {
      const int nb = q_.norm(beta);
      if (nb % 2 == 0 && nb / 2 <= d) {
        for (auto& osc : oscillator_sets(d - nb / 2)) out.push_back({beta, osc});
      }
      int i = 0;
      while (i < q_.rank && beta[i] == bound) beta[i++] = -bound;
      if (i == q_.rank) break;
      ++beta[i];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_room(int d) const {
    if (d > max_degree_)
      throw Error(Errc::truncation_violation, "lattice state degree " + std::to_string(d) +
                                                  " exceeds max degree " +
                                                  std::to_string(max_degree_));
  }

  /// Degree-`weight` coefficient of exp(sign * sum_k gamma_{-sign*k} x^k / k)
  /// applied to v (sign=-1: annihilation part, sign=+1: creation part).
  FockVector exp_part(const LatticePoint& gamma, int weight, int sign, const FockVector& v) const {
    if (weight == 0) return v;
    FockVector out;
    // enumerate partitions of `weight` as multiplicities of parts
    std::vector<int> mult(weight + 1, 0);
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
      if (remaining == 0) {
        FockVector cur = v;
        Rational coeff = 1;
        for (int k = 1; k <= weight && !cur.empty(); ++k)
          for (int r = 0; r < mult[k]; ++r) {
            cur = heisenberg(gamma, -sign * k, cur);
            coeff *= frac(sign, k);
          }
        for (int k = 1; k <= weight; ++k)
          for (int r = 2; r <= mult[k]; ++r) coeff /= r;
        out.add_scaled(cur, coeff);
        return;
      }
      for (int part = std::min(remaining, max_part); part >= 1; --part) {
        ++mult[part];
        rec(remaining - part, part);
        --mult[part];
      }
    };
    rec(weight, weight);
    return out;
  }

  std::vector<std::vector<Oscillator>> oscillator_sets(int d) const {
    std::vector<std::vector<Oscillator>> out;
    std::vector<Oscillator> cur;
    std::function<void(int, Oscillator)> rec = [&](int remaining, Oscillator min_o) {
      if (remaining == 0) {
        out.push_back(cur);
        return;
      }
      for (int n = min_o.n; n <= remaining; ++n)
        for (int dir = (n == min_o.n ? min_o.dir : 0); dir < q_.rank; ++dir) {
          cur.push_back({dir, n});
          rec(remaining - n, {dir, n});
          cur.pop_back();
        }
    };
    rec(d, Oscillator{0, 1});
    return out;
  }

  RootLattice q_;
  Cocycle eps_;
  int max_degree_;
  RationalMatrix gram_inverse_;
};

// ---------------------------------------------------------------------------
// Frenkel-Kac assignment E_i -> Gamma_{alpha_i}, H_i -> alpha_i, F_i -> Gamma_{-alpha_i};
// non-simple root vectors are realized as brackets of simple ones.

class FrenkelKacMap {
 public:
  FrenkelKacMap(const LieData& L, const LatticeVOA& V) : L_(L), V_(V) {
    if (V.lattice().rank != L.rank())
      throw Error(Errc::invalid_argument, "lattice rank does not match algebra rank");
    table_ = squared_table(L_).casimir();
  }

  const LieData& algebra() const { return L_; }
  const LatticeVOA& voa() const { return V_; }

  /// Image of the affine mode (gen)_m. K acts as 1.
  FockVector apply(int gen, int m, const FockVector& v) const {
    switch (L_.kind(gen)) {
      case GenKind::cartan: {
        const int i = gen - L_.cartan(0);
        return V_.heisenberg(i, m, v);
      }
      case GenKind::raising:
      case GenKind::lowering: {
        auto [r, c] = L_.matrix_unit_of(gen);
        const int lo = std::min(r, c), hi = std::max(r, c);
        if (hi == lo + 1) {
          LatticePoint g = V_.lattice().zero();
          g[lo] = r < c ? 1 : -1;
          return V_.vertex(g, m, v);
        }
        // E_{lo,hi} = [E_{lo,lo+1}, E_{lo+1,hi}],  E_{hi,lo} = [E_{hi,lo+1}, E_{lo+1,lo}]
        int a, b;
        if (r < c) {
          a = index_of(lo, lo + 1);
          b = index_of(lo + 1, hi);
          return apply(a, 0, apply(b, m, v)) - apply(b, m, apply(a, 0, v));
        }
        a = index_of(hi, lo + 1);
        b = index_of(lo + 1, lo);
        return apply(a, m, apply(b, 0, v)) - apply(b, 0, apply(a, m, v));
      }
    }
    return {};
  }

  /// Sugawara field assembled from the images (level 1).
  FockVector sugawara(int m, const FockVector& v) const {
    FockVector out;
    const Rational norm = frac(1, 2 * (1 + L_.dual_coxeter()));
    for (const auto& [s, c] : v) {
      const int d = V_.degree(s);
      if (m > d) continue;
      const FockVector u(s);
      for (const auto& t : table_) {
        for (int j = m - d; j <= -1; ++j)
          out.add_scaled(apply(t.left, j, apply(t.right, m - j, u)), t.coeff * c * norm);
        for (int j = 0; j <= d; ++j)
          out.add_scaled(apply(t.right, m - j, apply(t.left, j, u)), t.coeff * c * norm);
      }
    }
    return out;
  }

  /// Sign s with image(E_root)_m = s * Gamma_root,m on the sampled states
  /// (0 if they are not proportional).
  int composite_sign(int gen, int m, const std::vector<LatticeState>& states) const {
    auto [r, c] = L_.matrix_unit_of(gen);
    LatticePoint g = V_.lattice().zero();
    const int lo = std::min(r, c), hi = std::max(r, c);
    for (int i = lo; i < hi; ++i) g[i] = r < c ? 1 : -1;
    int sign = 0;
    for (const auto& s : states) {
      FockVector img = apply(gen, m, FockVector(s));
      FockVector gam = V_.vertex(g, m, FockVector(s));
      if (img.empty() && gam.empty()) continue;
      int here = 0;
      if (img == gam)
        here = 1;
      else if (img == Rational(-1) * gam)
        here = -1;
      if (here == 0 || (sign != 0 && here != sign)) return 0;
      sign = here;
    }
    return sign;
  }

 private:
  int index_of(int r, int c) const {
    for (int a = 0; a < L_.dim(); ++a)
      if (L_.kind(a) != GenKind::cartan && L_.matrix_unit_of(a) == std::pair(r, c)) return a;
    throw Error(Errc::invalid_argument, "no root vector for matrix unit");
  }

  const LieData& L_;
  const LatticeVOA& V_;
  std::vector<QuadraticTerm> table_;
};

inline std::string to_string(const LatticeState& s) {
  std::ostringstream os;
  for (const auto& o : s.osc) os << "a" << o.dir + 1 << "(" << -o.n << ") ";
  os << "e^[";
  for (std::size_t i = 0; i < s.beta.size(); ++i) os << (i ? "," : "") << s.beta[i];
  os << "]";
  return os.str();
}

}  // namespace wzw
