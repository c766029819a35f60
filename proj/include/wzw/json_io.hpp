#pragma once

// JSON serialization of reports. Exact rationals are "p/q" strings; field
// order is fixed so identical inputs give identical bytes.

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "wzw/affine.hpp"
#include "wzw/lattice_oracle.hpp"
#include "wzw/martingale.hpp"
#include "wzw/null_solver.hpp"
#include "wzw/sde.hpp"

namespace wzw {

using Json = nlohmann::ordered_json;

inline Json rational_array(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline std::vector<Rational> rational_array_from(const Json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

inline Json monomial_json(const Monomial& m) {
  Json word = Json::array();
  for (const auto& l : m.word) word.push_back(Json::array({l.mode, l.gen}));
  return Json{{"word", word}, {"top", m.top}};
}

inline Json module_json(const WeylModule& M, bool with_gram, bool with_basis = true) {
  const auto& L = M.algebra();
  Json gens = Json::array();
  for (int a = 0; a < L.dim(); ++a) gens.push_back(L.name(a));
  Json j{{"algebra", "sl" + std::to_string(L.n())},
         {"level", M.level()},
         {"weight", M.weight().labels},
         {"max_degree", M.max_degree()},
         {"generators", gens},
         {"top_dimension", M.top().dim()},
         {"central_charge", to_string(M.central_charge())},
         {"conformal_weight", to_string(M.conformal_weight())}};
  Json degrees = Json::array();
  for (int d = 0; d <= M.max_degree(); ++d) {
    const RationalMatrix g = M.gram(d);
    Json e{{"degree", d}, {"dimension", M.dimension(d)}, {"gram_rank", rank(g)}};
    if (with_basis) {
      Json b = Json::array();
      for (const auto& m : M.basis(d)) b.push_back(monomial_json(m));
      e["basis"] = b;
    }
    if (with_gram) {
      Json rows = Json::array();
      for (const auto& row : g) rows.push_back(rational_array(row));
      e["gram"] = rows;
    }
    degrees.push_back(e);
  }
  j["degrees"] = degrees;
  return j;
}

inline Json solve_report_json(const SolveReport& r) {
  Json sol = Json::object();
  for (std::size_t i = 0; i < r.solution.size(); ++i) sol[r.unknowns[i]] = to_string(r.solution[i]);
  Json dirs = Json::array();
  for (const auto& d : r.directions) dirs.push_back(rational_array(d));
  Json pos = Json::array();
  for (bool b : r.positive) pos.push_back(b);
  bool residual_zero = true;
  for (const auto& x : r.residual) residual_zero = residual_zero && x == 0;
  return Json{{"status", std::string(status_name(r.status))},
              {"unknowns", r.unknowns},
              {"solution", sol},
              {"directions", dirs},
              {"positive", pos},
              {"all_positive", r.all_positive},
              {"algebraic_only", r.algebraic_only()},
              {"equations", r.equations},
              {"nonzero_equations", r.nonzero_equations},
              {"rank", r.rank},
              {"residual_zero", residual_zero},
              {"residual_entries", r.residual.size()}};
}

inline SolveReport solve_report_from(const Json& j) {
  SolveReport r;
  const std::string st = j.at("status");
  if (st == "unique-solution")
    r.status = SolveStatus::unique_solution;
  else if (st == "family")
    r.status = SolveStatus::family;
  else if (st == "infeasible")
    r.status = SolveStatus::infeasible;
  else
    throw Error(Errc::invalid_argument, "unknown status '" + st + "'");
  r.unknowns = j.at("unknowns").get<std::vector<std::string>>();
  for (const auto& u : r.unknowns)
    if (j.at("solution").contains(u)) r.solution.push_back(parse_rational(j["solution"][u].get<std::string>()));
  for (const auto& d : j.at("directions")) r.directions.push_back(rational_array_from(d));
  r.positive = j.at("positive").get<std::vector<bool>>();
  r.all_positive = j.at("all_positive");
  r.equations = j.at("equations");
  r.nonzero_equations = j.at("nonzero_equations");
  r.rank = j.at("rank");
  r.residual.assign(j.at("residual_entries").get<std::size_t>(), Rational(0));
  return r;
}

inline Json null_verdict_json(const WeylModule& M, const NullVerdict& v, std::size_t max_listed = 20) {
  Json listed = Json::array();
  for (std::size_t i = 0; i < v.nonzero_pairings.size() && i < max_listed; ++i)
    listed.push_back(Json{{"monomial", to_string(M.algebra(), v.nonzero_pairings[i].first)},
                          {"pairing", to_string(v.nonzero_pairings[i].second)}});
  return Json{{"is_null", v.is_null},
              {"checked", v.checked},
              {"nonzero_pairings", v.nonzero_pairings.size()},
              {"listed", listed}};
}

inline Json scan_row_json(const ScanRow& r, bool with_time) {
  Json j{{"algebra", "sl" + std::to_string(r.n)}, {"n", r.n}, {"slice_dimension", r.slice_dimension},
         {"report", solve_report_json(r.report)}};
  if (with_time) j["seconds"] = r.seconds;
  return j;
}

inline ScanRow scan_row_from(const Json& j) {
  ScanRow r;
  r.n = j.at("n");
  r.slice_dimension = j.at("slice_dimension");
  r.report = solve_report_from(j.at("report"));
  r.seconds = j.value("seconds", 0.0);
  return r;
}

inline Json fock_json(const FockVector& v) {
  Json a = Json::array();
  for (const auto& [s, c] : v) {
    Json osc = Json::array();
    for (const auto& o : s.osc) osc.push_back(Json::array({o.dir, -o.n}));
    a.push_back(Json{{"lattice_point", s.beta}, {"oscillators", osc}, {"coefficient", to_string(c)}});
  }
  return a;
}

inline Json identity_report_json(const IdentityReport& r) {
  Json ids = Json::array();
  for (const auto& i : r.identities)
    ids.push_back(Json{{"name", i.name}, {"holds", i.holds()}, {"lhs", fock_json(i.lhs)}, {"rhs", fock_json(i.rhs)}});
  Json signs = Json::array();
  for (const auto& s : r.composite_signs) signs.push_back(Json{{"generator", s.generator}, {"sign", s.sign}});
  Json fails = Json::array();
  for (const auto& f : r.relations.failures)
    fails.push_back(Json{{"relation", f.relation}, {"state", to_string(f.state)}, {"m", f.m}, {"n", f.n}});
  return Json{{"algebra", r.algebra},
              {"convention", std::string(convention_name(r.convention))},
              {"ok", r.ok()},
              {"relation_checks", r.relations.checks},
              {"relation_failures", fails},
              {"identities", ids},
              {"composite_signs", signs}};
}

/// Non-finite doubles become null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json complex_array(const std::vector<std::complex<double>>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(Json::array({number(c.real()), number(c.imag())}));
  return a;
}

inline Json degree_statistic_json(const DegreeStatistic& s) {
  return Json{{"degree", s.degree},
              {"dimension", s.dimension},
              {"covariance_rank", s.rank},
              {"mahalanobis", number(s.mahalanobis)},
              {"z", number(s.z)},
              {"leakage", s.leakage},
              {"mean_deviation", complex_array(s.mean_deviation)},
              {"standard_error", complex_array(s.standard_error)}};
}

inline Json martingale_report_json(const MartingaleReport& r) {
  Json dev = Json::array(), agr = Json::array();
  for (const auto& s : r.deviation) dev.push_back(degree_statistic_json(s));
  for (const auto& s : r.agreement) agr.push_back(degree_statistic_json(s));
  return Json{{"steps", r.steps},
              {"paths", r.config.paths},
              {"censored", r.censored},
              {"max_z", number(r.max_z())},
              {"deviation", dev},
              {"drift_agreement", agr},
              {"predicted_deviation", complex_array(r.predicted_deviation)}};
}

inline Json strong_order_json(const StrongOrderFit& f) {
  Json lv = Json::array();
  for (const auto& l : f.levels)
    lv.push_back(Json{{"steps", l.steps}, {"dt", l.dt}, {"mean_max_residual", number(l.mean_residual)}});
  return Json{{"levels", lv}, {"slope", number(f.slope)}, {"censored", f.censored}};
}

}  // namespace wzw
