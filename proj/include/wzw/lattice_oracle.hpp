#pragma once

// Cross-checks between the PBW Weyl module and its lattice realization:
// the quotient map phi, relation suites on Fock states, and the explicit
// degree-4 state identities of the basic sl_2 / sl_3 modules.

#include <map>
#include <string>
#include <vector>

#include "wzw/affine.hpp"
#include "wzw/lattice.hpp"
#include "wzw/null_solver.hpp"

namespace wzw {

/// Image of a vacuum-module vector: X_{a1,m1} ... X_{ar,mr}|0> -> product of FK images on e^0.
inline FockVector phi(const FrenkelKacMap& fk, const ModuleVector& v) {
  FockVector out;
  for (const auto& [mono, c] : v) {
    if (mono.top != 0) throw Error(Errc::invalid_argument, "phi is defined on the vacuum module only");
    FockVector s = fk.voa().vacuum();
    for (auto it = mono.word.rbegin(); it != mono.word.rend() && !s.empty(); ++it)
      s = fk.apply(it->gen, it->mode, s);
    out.add_scaled(s, c);
  }
  return out;
}

struct LatticeRelationFailure {
  std::string relation;
  LatticeState state;
  int m = 0;
  int n = 0;
};

struct LatticeRelationReport {
  std::size_t checks = 0;
  std::vector<LatticeRelationFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// [X_m, Y_n] = [X,Y]_{m+n} + m (X|Y) delta_{m+n,0} on Fock states of degree <= max_degree.
inline LatticeRelationReport verify_fk_relations(const FrenkelKacMap& fk, int max_mode,
                                                 int max_degree) {
  LatticeRelationReport rep;
  const auto& L = fk.algebra();
  const auto& V = fk.voa();
  auto fits = [&](int d, int a, int b) { return d - a <= V.max_degree() && d - a - b <= V.max_degree(); };
  for (int d = 0; d <= std::min(max_degree, V.max_degree()); ++d)
    for (const auto& s : V.basis(d)) {
      const FockVector u(s);
      for (int m = -max_mode; m <= max_mode; ++m)
        for (int n = -max_mode; n <= max_mode; ++n) {
          if (!fits(d, n, m) || !fits(d, m, n)) continue;
          for (int a = 0; a < L.dim(); ++a)
            for (int c = 0; c < L.dim(); ++c) {
              FockVector lhs = fk.apply(a, m, fk.apply(c, n, u)) - fk.apply(c, n, fk.apply(a, m, u));
              FockVector rhs;
              for (const auto& t : L.bracket(a, c)) rhs.add_scaled(fk.apply(t.gen, m + n, u), t.coeff);
              if (m + n == 0) rhs.add_scaled(u, L.form(a, c) * m);
              ++rep.checks;
              if (!(lhs == rhs))
                rep.failures.push_back({"[" + L.name(a) + "," + L.name(c) + "]", s, m, n});
            }
        }
    }
  return rep;
}

/// Sugawara field built from the FK images equals the free-boson L_m.
inline LatticeRelationReport verify_lattice_sugawara(const FrenkelKacMap& fk, int max_mode,
                                                     int max_degree) {
  LatticeRelationReport rep;
  const auto& V = fk.voa();
  for (int d = 0; d <= std::min(max_degree, V.max_degree()); ++d)
    for (const auto& s : V.basis(d))
      for (int m = -max_mode; m <= max_mode; ++m) {
        if (d - m > V.max_degree()) continue;
        const FockVector u(s);
        ++rep.checks;
        if (!(fk.sugawara(m, u) == V.virasoro(m, u))) rep.failures.push_back({"L", s, m, 0});
      }
  return rep;
}

struct StateIdentity {
  std::string name;
  FockVector lhs;
  FockVector rhs;
  bool holds() const { return lhs == rhs; }
};

struct CompositeSign {
  std::string generator;
  int sign = 0;  // 0: image is not proportional to the bare vertex operator
};

struct IdentityReport {
  std::string algebra;
  CocycleConvention convention = CocycleConvention::lower;
  std::vector<StateIdentity> identities;
  std::vector<CompositeSign> composite_signs;
  LatticeRelationReport relations;
  bool ok() const {
    if (!relations.ok()) return false;
    for (const auto& i : identities)
      if (!i.holds()) return false;
    return true;
  }
};

/// phi(v(kappa)) = 0 in the lattice realization.
inline bool lattice_is_null(const FrenkelKacMap& fk, const NullCandidate& cand,
                            const std::vector<Rational>& kappa) {
  return phi(fk, cand.evaluate(kappa)).empty();
}

/// Solves phi(constant) + sum kappa_i phi(direction_i) = 0 in Fock coordinates.
/// Independent of the Gram matrix: the lattice module is the irreducible quotient.
inline SolveReport lattice_solve(const FrenkelKacMap& fk, const NullCandidate& cand) {
  std::map<LatticeState, std::size_t> index;
  std::vector<FockVector> cols;
  const FockVector c0 = phi(fk, cand.constant);
  for (const auto& d : cand.directions) cols.push_back(phi(fk, d));
  auto touch = [&](const FockVector& v) {
    for (const auto& [s, c] : v) index.emplace(s, index.size());
  };
  touch(c0);
  for (const auto& c : cols) touch(c);
  NullSystem sys;
  sys.constant.assign(index.size(), Rational(0));
  for (const auto& [s, c] : c0) sys.constant[index[s]] = c;
  sys.columns.assign(cols.size(), RationalColumn(index.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [s, c] : cols[j]) sys.columns[j][index[s]] = c;
  return solve_system(sys, cand.unknowns);
}

namespace detail {

inline FockVector osc_state(const LatticeVOA& V, std::initializer_list<int> modes) {
  LatticeState s{V.lattice().zero(), {}};
  for (int n : modes) s.osc.push_back({0, n});
  std::sort(s.osc.begin(), s.osc.end());
  return FockVector(s);
}

inline ModuleVector word(const WeylModule& M, std::initializer_list<Letter> letters) {
  ModuleVector v = M.top_vector(0);
  // letters act right to left
  std::vector<Letter> ls(letters);
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) v = M.apply(it->gen, it->mode, v);
  return v;
}

inline ModuleVector virasoro_word(const WeylModule& M, std::initializer_list<int> modes) {
  ModuleVector v = M.top_vector(0);
  std::vector<int> ms(modes);
  for (auto it = ms.rbegin(); it != ms.rend(); ++it) v = M.sugawara(*it, v);
  return v;
}

}  // namespace detail

/// Degree-4 vacuum identities. sl_2 (n = 2): the five field identities, the
/// E/F difference, and the kappa-weighted null sum; sl_3 (n = 3): the single-tau
/// null identity and composite-root signs. Relation suites run to `relation_degree`.
inline IdentityReport verify_state_identities(int n, CocycleConvention conv, int relation_degree = 3) {
  if (n != 2 && n != 3)
    throw Error(Errc::invalid_argument, "state identities are tabulated for sl2 and sl3 only");
  IdentityReport rep;
  rep.algebra = "sl" + std::to_string(n);
  rep.convention = conv;
  LieData L = build_sl(n);
  LatticeVOA V(type_a_root_lattice(n - 1), conv, 4);
  FrenkelKacMap fk(L, V);
  WeylModule M(L, 1, L.zero_weight(), 4);

  rep.relations = verify_fk_relations(fk, 2, relation_degree);
  LatticeRelationReport sug = verify_lattice_sugawara(fk, 4, relation_degree);
  rep.relations.checks += sug.checks;
  for (auto& f : sug.failures) rep.relations.failures.push_back(std::move(f));

  if (n == 2) {
    using detail::osc_state;
    const int E = L.raising(0), H = L.cartan(0), F = L.lowering(0);
    auto q = [](long a, long b) { return frac(a, b); };
    const FockVector a31 = osc_state(V, {3, 1}), a22 = osc_state(V, {2, 2}),
                     a1111 = osc_state(V, {1, 1, 1, 1}), a4 = osc_state(V, {4});

    rep.identities.push_back(
        {"L(-4)|0>", phi(fk, detail::virasoro_word(M, {-4})), q(1, 4) * (Rational(2) * a31 + a22)});
    rep.identities.push_back({"L(-2)L(-2)|0>", phi(fk, detail::virasoro_word(M, {-2, -2})),
                              q(1, 2) * a31 + q(1, 16) * a1111});
    const FockVector ef = phi(fk, detail::word(M, {{-2, E}, {-2, F}}));
    const FockVector fe = phi(fk, detail::word(M, {{-2, F}, {-2, E}}));
    rep.identities.push_back(
        {"E(-2)F(-2)|0>", ef,
         q(1, 12) * (Rational(6) * a4 + Rational(4) * a31 + Rational(3) * a22 - a1111)});
    rep.identities.push_back(
        {"F(-2)E(-2)|0>", fe,
         q(1, 12) * (Rational(-6) * a4 + Rational(4) * a31 + Rational(3) * a22 - a1111)});
    rep.identities.push_back({"H(-2)H(-2)|0>", phi(fk, detail::word(M, {{-2, H}, {-2, H}})), a22});
    rep.identities.push_back({"E(-2)F(-2)|0> - F(-2)E(-2)|0>", ef - fe, a4});

    NullCandidate cand = build_candidate(M, 0, 2, Tie::per_generator);
    rep.identities.push_back(
        {"null sum kappa=(8/3,1,1,1)", phi(fk, cand.evaluate({q(8, 3), 1, 1, 1})), FockVector{}});
  } else {
    NullCandidate cand = build_candidate(M, 0, 2, Tie::single_tau);
    rep.identities.push_back(
        {"null sum kappa=12/5 tau=4/5", phi(fk, cand.evaluate({frac(12, 5), frac(4, 5)})), FockVector{}});
    std::vector<LatticeState> sample;
    for (int d = 0; d <= 2; ++d)
      for (auto& s : V.basis(d)) sample.push_back(s);
    for (int a = 0; a < L.dim(); ++a) {
      if (L.kind(a) == GenKind::cartan) continue;
      auto [r, c] = L.matrix_unit_of(a);
      if (std::abs(r - c) < 2) continue;
      for (int m : {-1, 0, 1})
        rep.composite_signs.push_back(
            {L.name(a) + "(" + std::to_string(m) + ")", fk.composite_sign(a, m, sample)});
    }
  }
  return rep;
}

}  // namespace wzw
