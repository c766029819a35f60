#pragma once

// Truncated power series in w = 1/z. Coefficient k of every result depends
// only on coefficients <= k of the inputs, so results are consistent across
// truncation depths bit for bit.

#include <cmath>
#include <cstddef>
#include <vector>

#include "wzw/error.hpp"

namespace wzw {

using Series = std::vector<double>;

inline Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
    c[k] = s;
  }
  return c;
}

/// u^p for u[0] != 0 (J.C.P. Miller recurrence).
inline Series series_pow(const Series& u, double p) {
  if (u.empty()) return {};
  if (u[0] == 0.0) throw Error(Errc::invalid_argument, "series power needs a nonzero constant term");
  Series v(u.size(), 0.0);
  v[0] = std::pow(u[0], p);
  for (std::size_t k = 1; k < u.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * u[j] * v[k - j];
    v[k] = s / (static_cast<double>(k) * u[0]);
  }
  return v;
}

inline Series series_inverse(const Series& u) { return series_pow(u, -1.0); }

/// w^k a, truncated to the size of a.
inline Series series_shift(const Series& a, int k) {
  Series c(a.size(), 0.0);
  for (std::size_t i = 0; i + static_cast<std::size_t>(k) < a.size(); ++i) c[i + k] = a[i];
  return c;
}

/// a <- a + s b
inline void series_axpy(Series& a, double s, const Series& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) a[i] += s * b[i];
}

}  // namespace wzw
