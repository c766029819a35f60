#pragma once

// Candidates of the form
//   v(kappa) = [ -2 L_{-2n} + 1/2 kappa_0 L_{-n}^2 + 1/2 sum_r kappa_r (X_r)_{-n}^2 ] w
// and exact solution of the nullity system G_{2n} coords(v(kappa)) = 0.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wzw/affine.hpp"
#include "wzw/linalg.hpp"

namespace wzw {

enum class Tie { per_generator, single_tau };

/// Affine-linear family v(kappa) = constant + sum_i kappa_i directions[i].
struct NullCandidate {
  const WeylModule* module = nullptr;
  int n = 1;
  Tie tie = Tie::per_generator;
  ModuleVector top;
  std::vector<std::string> unknowns;
  ModuleVector constant;
  std::vector<ModuleVector> directions;

  int degree() const { return 2 * n; }

  ModuleVector evaluate(const std::vector<Rational>& kappa) const {
    if (kappa.size() != directions.size())
      throw Error(Errc::invalid_argument, "expected " + std::to_string(directions.size()) +
                                              " coefficients, got " + std::to_string(kappa.size()));
    ModuleVector v = constant;
    for (std::size_t i = 0; i < kappa.size(); ++i) v.add_scaled(directions[i], kappa[i]);
    return v;
  }
};

/// (X_r)_{-n}^2 w expanded through the squared-generator table.
inline ModuleVector squared_mode(const WeylModule& M, const SquaredGenerator& s, int n,
                                 const ModuleVector& w) {
  ModuleVector out;
  for (const auto& t : s.terms) out.add_scaled(M.apply(t.left, -n, M.apply(t.right, -n, w)), t.coeff);
  return out;
}

inline NullCandidate build_candidate(const WeylModule& M, const ModuleVector& w, int n, Tie tie) {
  if (n < 1) throw Error(Errc::invalid_argument, "mode depth n must be >= 1");
  if (2 * n > M.max_degree())
    throw Error(Errc::truncation_violation, "candidate degree " + std::to_string(2 * n) +
                                                " exceeds module max degree " +
                                                std::to_string(M.max_degree()));
  if (w.empty()) throw Error(Errc::zero_vector, "top vector w is zero");
  for (const auto& [m, c] : w)
    if (m.degree() != 0) throw Error(Errc::degree_mismatch, "w must lie in the top space");

  NullCandidate cand;
  cand.module = &M;
  cand.n = n;
  cand.tie = tie;
  cand.top = w;
  const Rational half = frac(1, 2);
  cand.constant = Rational(-2) * M.sugawara(-2 * n, w);
  cand.unknowns.push_back(tie == Tie::single_tau ? "kappa" : "kappa0");
  cand.directions.push_back(half * M.sugawara(-n, M.sugawara(-n, w)));

  const auto table = squared_table(M.algebra());
  if (tie == Tie::single_tau) {
    ModuleVector sum;
    for (const auto& s : table.entries) sum += squared_mode(M, s, n, w);
    cand.unknowns.push_back("tau");
    cand.directions.push_back(half * sum);
  } else {
    for (std::size_t r = 0; r < table.size(); ++r) {
      cand.unknowns.push_back("kappa" + std::to_string(r + 1));
      cand.directions.push_back(half * squared_mode(M, table.entries[r], n, w));
    }
  }
  return cand;
}

inline NullCandidate build_candidate(const WeylModule& M, int top_index, int n, Tie tie) {
  if (top_index < 0 || top_index >= M.top().dim())
    throw Error(Errc::invalid_argument, "top index out of range");
  return build_candidate(M, M.top_vector(top_index), n, tie);
}

enum class SolveStatus { unique_solution, family, infeasible };

inline std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::unique_solution: return "unique-solution";
    case SolveStatus::family: return "family";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "?";
}

struct SolveReport {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<std::string> unknowns;
  std::vector<Rational> solution;                 // particular solution
  std::vector<std::vector<Rational>> directions;  // family directions
  std::vector<bool> positive;                     // per unknown, at the particular solution
  bool all_positive = false;
  std::size_t equations = 0;
  std::size_t nonzero_equations = 0;
  std::size_t rank = 0;
  /// Pairings of v(solution) against the degree slice; all zero when solved.
  std::vector<Rational> residual;
  bool algebraic_only() const { return status != SolveStatus::infeasible && !all_positive; }
};

/// Per-unknown pairing columns (G coords of constant and directions).
struct NullSystem {
  std::vector<Rational> constant;
  std::vector<std::vector<Rational>> columns;
};

inline NullSystem null_system(const NullCandidate& c) {
  const WeylModule& M = *c.module;
  NullSystem s;
  s.constant = M.pairings(c.degree(), c.constant);
  for (const auto& d : c.directions) s.columns.push_back(M.pairings(c.degree(), d));
  return s;
}

inline SolveReport solve_system(const NullSystem& sys, const std::vector<std::string>& unknowns,
                                const std::vector<std::size_t>* row_order = nullptr) {
  SolveReport rep;
  rep.unknowns = unknowns;
  const std::size_t rows = sys.constant.size();
  rep.equations = rows;
  RationalMatrix a;
  RationalColumn b;
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t i = row_order ? (*row_order)[k] : k;
    bool nonzero = sys.constant[i] != 0;
    RationalColumn row(unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      row[j] = sys.columns[j][i];
      nonzero = nonzero || row[j] != 0;
    }
    if (!nonzero) continue;
    a.push_back(std::move(row));
    b.push_back(-sys.constant[i]);
  }
  rep.nonzero_equations = a.size();
  AffineSolution sol = solve_affine(a, b);
  rep.rank = sol.rank;
  if (a.empty()) {
    sol.particular.assign(unknowns.size(), Rational(0));
    sol.directions.clear();
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      RationalColumn d(unknowns.size());
      d[j] = 1;
      sol.directions.push_back(std::move(d));
    }
    sol.kind = unknowns.empty() ? SolutionKind::unique : SolutionKind::family;
  }
  switch (sol.kind) {
    case SolutionKind::infeasible: rep.status = SolveStatus::infeasible; return rep;
    case SolutionKind::unique: rep.status = SolveStatus::unique_solution; break;
    case SolutionKind::family: rep.status = SolveStatus::family; break;
  }
  rep.solution = sol.particular;
  rep.directions = sol.directions;
  rep.all_positive = true;
  for (const auto& x : rep.solution) {
    rep.positive.push_back(x > 0);
    rep.all_positive = rep.all_positive && x > 0;
  }
  rep.residual.assign(rows, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    Rational r = sys.constant[i];
    for (std::size_t j = 0; j < unknowns.size(); ++j) r += rep.solution[j] * sys.columns[j][i];
    rep.residual[i] = r;
  }
  return rep;
}

inline SolveReport solve(const NullCandidate& c) { return solve_system(null_system(c), c.unknowns); }

struct NullVerdict {
  bool is_null = false;
  std::size_t checked = 0;
  std::vector<std::pair<Monomial, Rational>> nonzero_pairings;
};

/// v is null iff it pairs to zero with the whole same-degree slice.
inline NullVerdict verify_null(const WeylModule& M, const ModuleVector& v) {
  int d = 0;
  if (!is_homogeneous(v, &d)) throw Error(Errc::degree_mismatch, "vector is not homogeneous");
  NullVerdict verdict;
  if (v.empty()) {
    verdict.is_null = true;
    return verdict;
  }
  const auto p = M.pairings(d, v);
  const auto basis = M.basis(d);
  verdict.checked = p.size();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) verdict.nonzero_pairings.emplace_back(basis[i], p[i]);
  verdict.is_null = verdict.nonzero_pairings.empty();
  return verdict;
}

struct ScanRow {
  int n = 0;  // algebra sl_n
  std::size_t slice_dimension = 0;
  SolveReport report;
  double seconds = 0;
};

/// Single-tau conjecture candidates in the basic representation L_{sl_n,1}
/// at mode depth n_mode. `on_row` is invoked after each finished algebra
/// (used for checkpointing); rows already present in `done` are skipped.
inline std::vector<ScanRow> conjecture_scan(
    const std::vector<int>& ranks, int n_mode = 2, std::vector<ScanRow> done = {},
    const std::function<void(const std::vector<ScanRow>&)>& on_row = {}) {
  std::vector<ScanRow> rows = std::move(done);
  for (int n : ranks) {
    if (std::any_of(rows.begin(), rows.end(), [n](const ScanRow& r) { return r.n == n; })) continue;
    const auto t0 = std::chrono::steady_clock::now();
    LieData L = build_sl(n);
    WeylModule M(L, 1, L.zero_weight(), 2 * n_mode);
    auto cand = build_candidate(M, 0, n_mode, Tie::single_tau);
    ScanRow row;
    row.n = n;
    row.slice_dimension = M.dimension(2 * n_mode);
    row.report = solve(cand);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) { return a.n < b.n; });
    if (on_row) on_row(rows);
  }
  return rows;
}

}  // namespace wzw
