#pragma once

// Euler-Maruyama simulation of the growth process
//   df = (2 - kappa0 (n-1)/2) f^{1-2n} dt - f^{1-n} dB0,   dtheta_r = f^{-n} dB_r,
// in the coordinates f(z) = z u(w), theta_r(z) = sum_k theta_{r,k} w^k, w = 1/z,
// and of the rescaled map g = f^n + n B0.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "wzw/error.hpp"
#include "wzw/lie.hpp"
#include "wzw/series.hpp"

namespace wzw {

inline constexpr double kBlowUpThreshold = 1e-9;

struct LaurentState {
  int depth = 0;   // D_z
  Series u;        // f(z) = z (u_0 + u_1 z^{-1} + ... + u_D z^{-D}); u_k = a_{1-k}
  std::vector<Series> theta;
  double t = 0.0;
  double b0 = 0.0;  // B^(0)_t

  double a1() const { return u.at(0); }
  /// a_{1-k} for k = 0..D
  const Series& f_coefficients() const { return u; }

  static LaurentState initial(int depth, int channels) {
    if (depth < 1) throw Error(Errc::invalid_argument, "series depth must be >= 1");
    LaurentState s;
    s.depth = depth;
    s.u.assign(depth + 1, 0.0);
    s.u[0] = 1.0;
    s.theta.assign(channels, Series(depth + 1, 0.0));
    return s;
  }
};

struct NoiseStep {
  double dt = 0.0;
  std::vector<double> dB;  // index 0: B^(0); index r >= 1: B^(r)
};

/// Gaussian increments with variances kappa_i dt, generated from one seed.
class NoisePath {
 public:
  NoisePath(std::uint64_t seed, double dt, std::vector<double> kappa, int steps)
      : seed_(seed), dt_(dt), kappa_(std::move(kappa)), steps_(steps) {
    if (dt <= 0) throw Error(Errc::invalid_argument, "time step must be positive");
    if (steps < 0) throw Error(Errc::invalid_argument, "step count must be nonnegative");
    for (double k : kappa_)
      if (k < 0) throw Error(Errc::invalid_argument, "variances must be nonnegative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t c = kappa_.size();
    increments_.resize(static_cast<std::size_t>(steps) * c);
    for (int k = 0; k < steps; ++k)
      for (std::size_t i = 0; i < c; ++i)
        increments_[k * c + i] = std::sqrt(kappa_[i] * dt) * normal(rng);
  }

  std::uint64_t seed() const { return seed_; }
  double dt() const { return dt_; }
  int steps() const { return steps_; }
  std::size_t channels() const { return kappa_.size(); }
  const std::vector<double>& kappa() const { return kappa_; }

  double increment(int step, std::size_t channel) const {
    return increments_[static_cast<std::size_t>(step) * kappa_.size() + channel];
  }
  NoiseStep step(int k) const {
    NoiseStep s;
    s.dt = dt_;
    s.dB.resize(kappa_.size());
    for (std::size_t i = 0; i < kappa_.size(); ++i) s.dB[i] = increment(k, i);
    return s;
  }

  /// Same Brownian path sampled every `factor` steps.
  NoisePath coarsen(int factor) const {
    if (factor < 1 || steps_ % factor != 0)
      throw Error(Errc::invalid_argument, "coarsening factor must divide the step count");
    NoisePath p(*this, factor);
    return p;
  }

 private:
  NoisePath(const NoisePath& fine, int factor)
      : seed_(fine.seed_), dt_(fine.dt_ * factor), kappa_(fine.kappa_), steps_(fine.steps_ / factor) {
    const std::size_t c = kappa_.size();
    increments_.assign(static_cast<std::size_t>(steps_) * c, 0.0);
    for (int k = 0; k < steps_; ++k)
      for (int j = 0; j < factor; ++j)
        for (std::size_t i = 0; i < c; ++i) increments_[k * c + i] += fine.increment(k * factor + j, i);
  }

  std::uint64_t seed_;
  double dt_;
  std::vector<double> kappa_;
  int steps_;
  std::vector<double> increments_;
};

/// Seed of path `index` under a master seed (splitmix64 finalizer, so
/// neighbouring masters give unrelated path families).
inline std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) + index);
}

/// Drift constant 2 - kappa0 (n-1)/2.
inline double growth_drift(int n, double kappa0) { return 2.0 - 0.5 * kappa0 * (n - 1); }

/// Diffusion coefficients of one noise channel: (f-part as u-series, theta part per r).
struct Diffusion {
  Series f;
  std::vector<Series> theta;
};

inline Diffusion diffusion(const LaurentState& s, int n, std::size_t channel) {
  Diffusion d;
  d.f.assign(s.u.size(), 0.0);
  d.theta.assign(s.theta.size(), Series(s.u.size(), 0.0));
  if (channel == 0) {
    d.f = series_shift(series_pow(s.u, 1.0 - n), n);
    for (double& x : d.f) x = -x;
  } else {
    d.theta.at(channel - 1) = series_shift(series_pow(s.u, -static_cast<double>(n)), n);
  }
  return d;
}

/// One Euler-Maruyama step. Returns false when |a1| fell below the blow-up threshold.
inline bool step_f_theta(LaurentState& s, const NoiseStep& step, int n, double kappa0) {
  if (n < 1) throw Error(Errc::invalid_argument, "mode depth n must be >= 1");
  if (std::abs(s.a1()) < kBlowUpThreshold) return false;
  const Series drift = series_shift(series_pow(s.u, 1.0 - 2 * n), 2 * n);
  const Series noise_f = series_shift(series_pow(s.u, 1.0 - n), n);
  const Series noise_theta = series_shift(series_pow(s.u, -static_cast<double>(n)), n);
  const double c = growth_drift(n, kappa0);
  const double db0 = step.dB.empty() ? 0.0 : step.dB[0];
  series_axpy(s.u, c * step.dt, drift);
  series_axpy(s.u, -db0, noise_f);
  for (std::size_t r = 0; r < s.theta.size(); ++r) {
    const double db = r + 1 < step.dB.size() ? step.dB[r + 1] : 0.0;
    series_axpy(s.theta[r], db, noise_theta);
  }
  s.t += step.dt;
  s.b0 += db0;
  return std::abs(s.a1()) >= kBlowUpThreshold;
}

/// g(z) = z^n G(w) with G = u^n + n B0 w^n.
inline Series g_from_f(const LaurentState& s, int n) {
  Series g = series_pow(s.u, static_cast<double>(n));
  if (static_cast<std::size_t>(n) < g.size()) g[n] += n * s.b0;
  return g;
}

/// 1/g(1/w) as a series in w: w^n / G(w).
inline Series inverse_chart(const Series& g, int n) { return series_shift(series_inverse(g), n); }

/// Direct Euler integration of dg = 2n/(g - nB0) dt, i.e.
/// dG = 2n w^{2n} (G - n B0 w^n)^{-1} dt.
class LoewnerIntegrator {
 public:
  LoewnerIntegrator(int depth, int n) : n_(n), g_(depth + 1, 0.0) { g_[0] = 1.0; }

  /// Advances by dt using the driving value b0 at the start of the step.
  void step(double dt, double b0) {
    Series denom = g_;
    if (static_cast<std::size_t>(n_) < denom.size()) denom[n_] -= n_ * b0;
    series_axpy(g_, 2.0 * n_ * dt, series_shift(series_inverse(denom), 2 * n_));
  }
  const Series& g() const { return g_; }

 private:
  int n_;
  Series g_;
};

inline double max_abs_difference(const Series& a, const Series& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct TraceRow {
  double t;
  double b0;
  Series f;
  std::vector<Series> theta;
  double g_residual;
};

struct TraceResult {
  int n = 1;
  std::vector<TraceRow> rows;
  double max_residual = 0.0;
  bool censored = false;
  int censored_step = -1;
};

/// Runs the f/theta system and the direct g integration on one path.
/// Rows are kept every `stride` steps (and at the end).
inline TraceResult simulate_trace(const NoisePath& path, int n, double kappa0, int depth,
                                  int stride = 1) {
  TraceResult out;
  out.n = n;
  LaurentState s = LaurentState::initial(depth, static_cast<int>(path.channels()) - 1);
  LoewnerIntegrator direct(depth, n);
  auto record = [&](double residual) {
    out.rows.push_back({s.t, s.b0, s.u, s.theta, residual});
  };
  record(0.0);
  for (int k = 0; k < path.steps(); ++k) {
    const double b_before = s.b0;
    const NoiseStep st = path.step(k);
    const bool alive = step_f_theta(s, st, n, kappa0);
    direct.step(st.dt, b_before);
    const double r = max_abs_difference(g_from_f(s, n), direct.g());
    out.max_residual = std::max(out.max_residual, r);
    if (!alive) {
      out.censored = true;
      out.censored_step = k;
      record(r);
      break;
    }
    if ((k + 1) % stride == 0 || k + 1 == path.steps()) record(r);
  }
  return out;
}

struct StrongOrderLevel {
  int steps;
  double dt;
  double mean_residual;
};

struct StrongOrderFit {
  std::vector<StrongOrderLevel> levels;
  double slope = 0.0;
  int censored = 0;
};

/// Mean over paths of max_t |G_from_f - G_direct| for dt = T 2^{-e}, e in [e_min, e_max],
/// all levels sharing the finest Brownian path; slope of log residual vs log dt.
inline StrongOrderFit strong_order(int n, double kappa0, double T, int depth, int e_min, int e_max,
                                   int paths, std::uint64_t seed) {
  if (e_min > e_max || e_min < 1) throw Error(Errc::invalid_argument, "bad refinement range");
  StrongOrderFit fit;
  const int finest = 1 << e_max;
  std::vector<double> sums(e_max - e_min + 1, 0.0);
  for (int p = 0; p < paths; ++p) {
    NoisePath fine(path_seed(seed, static_cast<std::uint64_t>(p)), T / finest, {kappa0}, finest);
    for (int e = e_min; e <= e_max; ++e) {
      const NoisePath path = fine.coarsen(1 << (e_max - e));
      const TraceResult r = simulate_trace(path, n, kappa0, depth, path.steps());
      if (r.censored) ++fit.censored;
      sums[e - e_min] += r.max_residual;
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int e = e_min; e <= e_max; ++e) {
    StrongOrderLevel lv{1 << e, T / (1 << e), sums[e - e_min] / paths};
    fit.levels.push_back(lv);
    const double x = std::log2(lv.dt), y = std::log2(lv.mean_residual);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(fit.levels.size());
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

// ---------------------------------------------------------------------------
// Finite-dimensional Theta process: dTheta Theta^{-1} = sum dtheta_r X_r
// + 1/2 sum kappa_r f^{-2n} dt X_r^2, as a matrix-valued series in w.

using MatrixSeries = std::vector<Eigen::MatrixXcd>;

/// X_r in the defining representation, complex.
inline std::vector<Eigen::MatrixXcd> defining_hermitian_matrices(const LieData& L) {
  const auto coeffs = hermitian_basis(L);
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& c : coeffs) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(L.n(), L.n());
    for (int a = 0; a < L.dim(); ++a) {
      if (c[a] == std::complex<double>(0)) continue;
      const auto& m = L.matrix(a);
      for (int i = 0; i < L.n(); ++i)
        for (int j = 0; j < L.n(); ++j) x(i, j) += c[a] * static_cast<double>(m[i][j]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline MatrixSeries theta_identity(int dim, int depth) {
  MatrixSeries s(depth + 1, Eigen::MatrixXcd::Zero(dim, dim));
  s[0] = Eigen::MatrixXcd::Identity(dim, dim);
  return s;
}

/// Right-invariant update; `s` is the f-state at the start of the step.
inline void step_theta_group(MatrixSeries& theta, const LaurentState& s, const NoiseStep& step,
                             const std::vector<double>& kappa_r,
                             const std::vector<Eigen::MatrixXcd>& x, int n) {
  const std::size_t depth = theta.size();
  const int dim = static_cast<int>(theta[0].rows());
  const Series noise = series_shift(series_pow(s.u, -static_cast<double>(n)), n);
  const Series drift = series_shift(series_pow(s.u, -2.0 * n), 2 * n);
  MatrixSeries inc(depth, Eigen::MatrixXcd::Zero(dim, dim));
  for (std::size_t r = 0; r < x.size(); ++r) {
    const double db = r + 1 < step.dB.size() ? step.dB[r + 1] : 0.0;
    const double kr = r < kappa_r.size() ? kappa_r[r] : 0.0;
    const Eigen::MatrixXcd x2 = x[r] * x[r];
    for (std::size_t k = 0; k < depth && k < noise.size(); ++k) {
      if (db != 0.0 && noise[k] != 0.0) inc[k] += (db * noise[k]) * x[r];
      if (kr != 0.0 && drift[k] != 0.0) inc[k] += (0.5 * kr * step.dt * drift[k]) * x2;
    }
  }
  MatrixSeries next = theta;
  for (std::size_t k = 0; k < depth; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      if (!inc[j].isZero(0.0)) next[k] += inc[j] * theta[k - j];
  theta = std::move(next);
}

// ---------------------------------------------------------------------------
// Output helpers

inline void write_trace_csv(std::ostream& os, const TraceResult& r) {
  if (r.rows.empty()) return;
  const auto& first = r.rows.front();
  os << "t,b0";
  for (std::size_t k = 0; k < first.f.size(); ++k) os << ",f_" << (1 - static_cast<long>(k));
  for (std::size_t c = 0; c < first.theta.size(); ++c)
    for (std::size_t k = 0; k < first.theta[c].size(); ++k)
      os << ",theta" << c + 1 << "_" << -static_cast<long>(k);
  os << ",g_residual\n";
  os.precision(17);
  for (const auto& row : r.rows) {
    os << row.t << "," << row.b0;
    for (double x : row.f) os << "," << x;
    for (const auto& th : row.theta)
      for (double x : th) os << "," << x;
    os << "," << row.g_residual << "\n";
  }
}

/// Polylines of n B0_t and the first few f coefficients against t.
inline void write_trace_svg(std::ostream& os, const TraceResult& r, int coefficients = 3) {
  const double width = 640, height = 400, pad = 40;
  std::vector<std::vector<std::pair<double, double>>> lines(1 + coefficients);
  for (const auto& row : r.rows) {
    lines[0].emplace_back(row.t, r.n * row.b0);
    for (int k = 0; k < coefficients && k + 1 < static_cast<int>(row.f.size()); ++k)
      lines[1 + k].emplace_back(row.t, row.f[k + 1]);
  }
  double t1 = 1e-12, lo = 0, hi = 0;
  for (const auto& l : lines)
    for (auto [t, y] : l) {
      t1 = std::max(t1, t);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  if (hi - lo < 1e-12) hi = lo + 1;
  const char* colors[] = {"#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[i % 6] << "\" points=\"";
    for (auto [t, y] : lines[i])
      os << pad + (width - 2 * pad) * t / t1 << "," << height - pad - (height - 2 * pad) * (y - lo) / (hi - lo)
         << " ";
    os << "\"/>\n";
  }
  os << "<text x=\"" << pad << "\" y=\"20\" font-size=\"12\">n B0 (black), f coefficients a0, a-1, ...</text>\n";
  os << "</svg>\n";
}

}  // namespace wzw
