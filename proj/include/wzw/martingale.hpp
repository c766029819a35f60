#pragma once

// Monte Carlo test of the martingale property of G_t w on the degree-truncated
// irreducible quotient. G_{t+dt} = G_t (I + A dt + sum_i sigma_i dB_i) with
//   sigma_0 = L_{-n},  sigma_r = -(X_r)_{-n},
//   A = -2 L_{-2n} + kappa_0/2 L_{-n}^2 + 1/2 sum_r kappa_r (X_r)_{-n}^2.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "wzw/affine.hpp"
#include "wzw/error.hpp"
#include "wzw/lie.hpp"
#include "wzw/sde.hpp"

namespace wzw {

/// Degree <= D part of the irreducible quotient, coordinates w.r.t. pivot
/// representatives of each Gram matrix.
struct QuotientSpace {
  int max_degree = 0;
  std::vector<QuotientSlice> slices;
  std::vector<std::size_t> offset;  // offset[d] = first coordinate of degree d
  std::size_t dim = 0;

  std::size_t slice_dim(int d) const { return slices.at(d).dim(); }
};

inline QuotientSpace quotient_space(const WeylModule& M, int max_degree) {
  if (max_degree > M.max_degree())
    throw Error(Errc::truncation_violation, "quotient degree exceeds module max degree");
  QuotientSpace q;
  q.max_degree = max_degree;
  for (int d = 0; d <= max_degree; ++d) {
    q.slices.push_back(quotient_slice(M, d));
    q.offset.push_back(q.dim);
    q.dim += q.slices.back().dim();
  }
  return q;
}

/// Coordinates of an arbitrary vector of degree <= D.
inline RationalColumn quotient_vector(const WeylModule& M, const QuotientSpace& q,
                                      const ModuleVector& u) {
  RationalColumn out(q.dim);
  for (int d = 0; d <= q.max_degree; ++d) {
    const ModuleVector part = WeylModule::degree_part(u, d);
    if (part.empty()) continue;
    const RationalColumn c = quotient_coordinates(M, q.slices[d], part);
    for (std::size_t i = 0; i < c.size(); ++i) out[q.offset[d] + i] = c[i];
  }
  return out;
}

/// Matrix of a degree-raising operator on the truncated quotient (columns
/// whose image leaves the truncation are dropped).
template <typename Op>
RationalMatrix quotient_operator(const WeylModule& M, const QuotientSpace& q, int shift, Op&& op) {
  RationalMatrix out(q.dim, RationalColumn(q.dim));
  for (int d = 0; d + shift <= q.max_degree; ++d) {
    const auto basis = M.basis(d);
    const auto& sl = q.slices[d];
    for (std::size_t j = 0; j < sl.dim(); ++j) {
      const ModuleVector image = op(ModuleVector(basis[sl.representatives[j]]));
      if (image.empty()) continue;
      const RationalColumn c = quotient_coordinates(M, q.slices[d + shift], image);
      for (std::size_t i = 0; i < c.size(); ++i) out[q.offset[d + shift] + i][q.offset[d] + j] = c[i];
    }
  }
  return out;
}

/// Exact operators needed by the simulation, built once per (module, n, D).
class MartingaleOperators {
 public:
  MartingaleOperators(const WeylModule& M, int n, int max_degree)
      : M_(&M), n_(n), space_(quotient_space(M, max_degree)), table_(squared_table(M.algebra())) {
    if (n < 1) throw Error(Errc::invalid_argument, "mode depth n must be >= 1");
    l_n_ = quotient_operator(M, space_, n, [&](const ModuleVector& v) { return M.sugawara(-n, v); });
    l_2n_ = quotient_operator(M, space_, 2 * n, [&](const ModuleVector& v) { return M.sugawara(-2 * n, v); });
    for (int a = 0; a < M.algebra().dim(); ++a)
      gens_.push_back(
          quotient_operator(M, space_, n, [&](const ModuleVector& v) { return M.apply(a, -n, v); }));
  }

  const WeylModule& module() const { return *M_; }
  int n() const { return n_; }
  const QuotientSpace& space() const { return space_; }
  std::size_t channels() const { return 1 + table_.size(); }
  const RationalMatrix& virasoro_n() const { return l_n_; }
  const RationalMatrix& virasoro_2n() const { return l_2n_; }
  const RationalMatrix& generator(int a) const { return gens_.at(a); }

  /// (X_r)_{-n}^2 from the rational squared-generator table.
  RationalMatrix square(std::size_t r) const {
    RationalMatrix s(space_.dim, RationalColumn(space_.dim));
    for (const auto& t : table_.entries.at(r).terms) add_scaled(s, multiply(gens_[t.left], gens_[t.right]), t.coeff);
    return s;
  }

  /// Exact generator A for kappa = (kappa_0, kappa_1, ...).
  RationalMatrix drift(const std::vector<Rational>& kappa) const {
    check_kappa(kappa.size());
    RationalMatrix a(space_.dim, RationalColumn(space_.dim));
    add_scaled(a, l_2n_, Rational(-2));
    add_scaled(a, multiply(l_n_, l_n_), kappa[0] * frac(1, 2));
    for (std::size_t r = 0; r < table_.size(); ++r)
      if (kappa[r + 1] != 0) add_scaled(a, square(r), kappa[r + 1] * frac(1, 2));
    return a;
  }

  Eigen::MatrixXd drift(const std::vector<double>& kappa) const {
    check_kappa(kappa.size());
    Eigen::MatrixXd a = -2.0 * to_dense(l_2n_);
    const Eigen::MatrixXd ln = to_dense(l_n_);
    a += 0.5 * kappa[0] * ln * ln;
    for (std::size_t r = 0; r < table_.size(); ++r)
      if (kappa[r + 1] != 0) a += 0.5 * kappa[r + 1] * to_dense(square(r));
    return a;
  }

  /// sigma_0 = L_{-n}, sigma_r = -(X_r)_{-n} with complex X_r.
  std::vector<Eigen::MatrixXcd> diffusion() const {
    std::vector<Eigen::MatrixXcd> out;
    out.push_back(to_dense(l_n_).cast<std::complex<double>>());
    const auto coeffs = hermitian_basis(M_->algebra());
    for (const auto& c : coeffs) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(space_.dim, space_.dim);
      for (std::size_t a = 0; a < c.size(); ++a)
        if (c[a] != std::complex<double>(0)) s -= c[a] * to_dense(gens_[a]).cast<std::complex<double>>();
      out.push_back(std::move(s));
    }
    return out;
  }

  static Eigen::MatrixXd to_dense(const RationalMatrix& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].get_d();
    return out;
  }

 private:
  void check_kappa(std::size_t k) const {
    if (k != channels())
      throw Error(Errc::invalid_argument, "expected " + std::to_string(channels()) + " variances, got " +
                                              std::to_string(k));
  }
  static void add_scaled(RationalMatrix& a, const RationalMatrix& b, const Rational& s) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (b[i][j] != 0) a[i][j] += s * b[i][j];
  }

  const WeylModule* M_;
  int n_;
  QuotientSpace space_;
  SquaredGeneratorTable table_;
  RationalMatrix l_n_;
  RationalMatrix l_2n_;
  std::vector<RationalMatrix> gens_;
};

/// exp(T A) w = sum_k T^k A^k w / k!, exact; A is nilpotent on the truncation.
inline RationalColumn deterministic_drift(const RationalMatrix& a, const RationalColumn& w,
                                          const Rational& T) {
  RationalColumn out = w, term = w;
  for (int k = 1; k <= static_cast<int>(w.size()) + 1; ++k) {
    RationalColumn next(w.size());
    bool any = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (a[i][j] != 0 && term[j] != 0) s += a[i][j] * term[j];
      next[i] = s * T / k;
      any = any || next[i] != 0;
    }
    if (!any) break;
    for (std::size_t i = 0; i < w.size(); ++i) out[i] += next[i];
    term = std::move(next);
  }
  return out;
}

inline Eigen::VectorXd deterministic_drift(const Eigen::MatrixXd& a, const Eigen::VectorXd& w, double T) {
  Eigen::VectorXd out = w, term = w;
  for (int k = 1; k <= w.size() + 1; ++k) {
    term = (T / k) * (a * term);
    if (term.isZero(0.0)) break;
    out += term;
  }
  return out;
}

/// Product of step matrices, right-multiplied in time order.
class TruncatedGroupElement {
 public:
  explicit TruncatedGroupElement(const QuotientSpace& q)
      : q_(&q), m_(Eigen::MatrixXcd::Identity(q.dim, q.dim)) {}

  void right_multiply(const Eigen::MatrixXcd& step) { m_ = m_ * step; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& w) const { return m_ * w; }

  /// Entries mapping degree d to degree d' < d vanish; diagonal blocks are I
  /// (both to tolerance tol).
  bool block_lower_triangular(double tol = 0.0) const {
    for (int d = 0; d <= q_->max_degree; ++d)
      for (int e = 0; e <= q_->max_degree; ++e) {
        const auto blk = m_.block(q_->offset[e], q_->offset[d], q_->slice_dim(e), q_->slice_dim(d));
        if (e < d && blk.cwiseAbs().maxCoeff() > tol && blk.size() > 0) return false;
      }
    return true;
  }
  bool unipotent(double tol = 0.0) const {
    for (int d = 0; d <= q_->max_degree; ++d) {
      const auto n = static_cast<Eigen::Index>(q_->slice_dim(d));
      if (n == 0) continue;
      const auto blk = m_.block(q_->offset[d], q_->offset[d], n, n);
      if ((blk - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
  }

 private:
  const QuotientSpace* q_;
  Eigen::MatrixXcd m_;
};

inline Eigen::MatrixXcd step_matrix(const Eigen::MatrixXd& a, const std::vector<Eigen::MatrixXcd>& sigma,
                                    const NoiseStep& step) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(a.rows(), a.cols()) + step.dt * a.cast<std::complex<double>>();
  for (std::size_t i = 0; i < sigma.size(); ++i) m += step.dB.at(i) * sigma[i];
  return m;
}

struct MartingaleConfig {
  int n = 2;
  std::vector<double> kappa;  // kappa_0, kappa_1, ...
  double T = 0.5;
  double dt = 1e-3;
  int paths = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct DegreeStatistic {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<std::complex<double>> mean_deviation;
  std::vector<std::complex<double>> standard_error;  // per component (re, im)
  std::size_t rank = 0;                               // rank of the realified covariance
  double mahalanobis = 0.0;
  double z = 0.0;  // Wilson-Hilferty transform; +inf on null-space leakage
  bool leakage = false;
};

struct MartingaleReport {
  MartingaleConfig config;
  int steps = 0;
  int censored = 0;
  std::vector<DegreeStatistic> deviation;  // mean(G_T w) - w
  std::vector<DegreeStatistic> agreement;  // mean(G_T w) - exp(TA) w
  std::vector<std::complex<double>> predicted_deviation;  // exp(TA) w - w
  double max_z() const {
    double m = 0;
    for (const auto& s : deviation) m = std::max(m, s.z);
    return m;
  }
};

/// Standardized deviation of a realified sample mean; see DegreeStatistic.
inline DegreeStatistic standardize(int degree, const Eigen::VectorXd& sum, const Eigen::MatrixXd& sum_sq,
                                   std::size_t paths, const Eigen::VectorXd& shift) {
  DegreeStatistic s;
  s.degree = degree;
  const Eigen::Index m = sum.size();
  s.dimension = static_cast<std::size_t>(m / 2);
  const double N = static_cast<double>(paths);
  const Eigen::VectorXd mean = sum / N;
  Eigen::MatrixXd cov = (sum_sq - N * mean * mean.transpose()) / std::max(1.0, N - 1);
  cov = 0.5 * (cov + cov.transpose());
  const Eigen::VectorXd dev = mean - shift;
  for (Eigen::Index i = 0; i < m / 2; ++i) {
    s.mean_deviation.emplace_back(dev(2 * i), dev(2 * i + 1));
    s.standard_error.emplace_back(std::sqrt(std::max(0.0, cov(2 * i, 2 * i)) / N),
                                  std::sqrt(std::max(0.0, cov(2 * i + 1, 2 * i + 1)) / N));
  }
  if (m == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = std::max(0.0, lambda.maxCoeff());
  const double cut = top * 1e-10;
  const double scale = std::max(1.0, dev.norm() + std::sqrt(top));
  double d2 = 0.0, leak = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double proj = eig.eigenvectors().col(i).dot(dev);
    if (top > 0 && lambda(i) > cut) {
      d2 += N * proj * proj / lambda(i);
      ++s.rank;
    } else {
      leak += proj * proj;
    }
  }
  s.mahalanobis = d2;
  if (std::sqrt(leak) > 1e-9 * scale) {
    s.leakage = true;
    s.z = std::numeric_limits<double>::infinity();
    return s;
  }
  if (s.rank == 0) return s;
  const double k = static_cast<double>(s.rank);
  const double a = 2.0 / (9.0 * k);
  s.z = (std::cbrt(d2 / k) - (1.0 - a)) / std::sqrt(a);
  return s;
}

/// Runs the Monte Carlo on the quotient. w is given in quotient coordinates.
inline MartingaleReport martingale_mc(const MartingaleOperators& ops, const RationalColumn& w_exact,
                                      const MartingaleConfig& cfg) {
  const QuotientSpace& q = ops.space();
  if (2 * ops.n() > q.max_degree)
    throw Error(Errc::truncation_violation, "martingale test needs 2n <= truncation degree");
  if (cfg.kappa.size() != ops.channels())
    throw Error(Errc::invalid_argument, "expected " + std::to_string(ops.channels()) + " variances");
  if (cfg.T < 0 || cfg.dt <= 0 || cfg.paths < 2) throw Error(Errc::invalid_argument, "bad simulation settings");
  const long steps_l = std::lround(cfg.T / cfg.dt);
  if (std::abs(steps_l * cfg.dt - cfg.T) > 1e-9 * std::max(1.0, cfg.T))
    throw Error(Errc::invalid_argument, "T must be a multiple of dt");
  if (static_cast<double>(steps_l) * cfg.paths * ops.channels() * q.dim > 4e12)
    throw Error(Errc::resource_limit, "simulation size exceeds the resource limit");
  const int steps = static_cast<int>(steps_l);

  MartingaleReport rep;
  rep.config = cfg;
  rep.steps = steps;

  using C = std::complex<double>;
  const Eigen::MatrixXd a = ops.drift(cfg.kappa);
  const Eigen::SparseMatrix<C> a_dt = (cfg.dt * a).cast<C>().sparseView();
  std::vector<Eigen::SparseMatrix<C>> sigma;
  for (const auto& s : ops.diffusion()) sigma.push_back(s.sparseView());
  Eigen::VectorXcd w(q.dim);
  for (std::size_t i = 0; i < q.dim; ++i) w(i) = C(w_exact[i].get_d(), 0.0);
  const Eigen::VectorXd predicted = deterministic_drift(a, w.real(), cfg.T) - w.real();
  for (Eigen::Index i = 0; i < predicted.size(); ++i) rep.predicted_deviation.emplace_back(predicted(i), 0.0);

  // realified per-degree accumulators, one set per fixed-size chunk
  constexpr int kChunk = 64;
  const int chunks = (cfg.paths + kChunk - 1) / kChunk;
  const int D = q.max_degree;
  struct Acc {
    std::vector<Eigen::VectorXd> sum;
    std::vector<Eigen::MatrixXd> sq;
  };
  std::vector<Acc> acc(chunks);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int c = next++; c < chunks; c = next++) {
      Acc& A = acc[c];
      for (int d = 0; d <= D; ++d) {
        const auto m = static_cast<Eigen::Index>(2 * q.slice_dim(d));
        A.sum.push_back(Eigen::VectorXd::Zero(m));
        A.sq.push_back(Eigen::MatrixXd::Zero(m, m));
      }
      for (int p = c * kChunk; p < std::min(cfg.paths, (c + 1) * kChunk); ++p) {
        const NoisePath path(path_seed(cfg.seed, static_cast<std::uint64_t>(p)), cfg.dt, cfg.kappa, steps);
        Eigen::VectorXcd v = w;
        for (int k = steps - 1; k >= 0; --k) {
          Eigen::VectorXcd nv = v + a_dt * v;
          for (std::size_t i = 0; i < sigma.size(); ++i) {
            const double db = path.increment(k, i);
            if (db != 0.0) nv += db * (sigma[i] * v);
          }
          v = std::move(nv);
        }
        const Eigen::VectorXcd x = v - w;
        for (int d = 0; d <= D; ++d) {
          const auto n = static_cast<Eigen::Index>(q.slice_dim(d));
          Eigen::VectorXd r(2 * n);
          for (Eigen::Index i = 0; i < n; ++i) {
            r(2 * i) = x(q.offset[d] + i).real();
            r(2 * i + 1) = x(q.offset[d] + i).imag();
          }
          A.sum[d] += r;
          A.sq[d].selfadjointView<Eigen::Lower>().rankUpdate(r);
        }
      }
    }
  };
  unsigned nt = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(chunks));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int d = 0; d <= D; ++d) {
    const auto m = static_cast<Eigen::Index>(2 * q.slice_dim(d));
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(m, m);
    for (const auto& A : acc) {
      sum += A.sum[d];
      sq += A.sq[d];
    }
    sq = sq.selfadjointView<Eigen::Lower>();
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < m / 2; ++i) shift(2 * i) = predicted(q.offset[d] + i);
    rep.deviation.push_back(standardize(d, sum, sq, cfg.paths, Eigen::VectorXd::Zero(m)));
    rep.agreement.push_back(standardize(d, sum, sq, cfg.paths, shift));
  }
  return rep;
}

}  // namespace wzw
