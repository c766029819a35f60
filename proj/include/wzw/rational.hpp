#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "wzw/error.hpp"

namespace wzw {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (base 10). The result is canonical.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::invalid_argument, "empty rational literal");
  std::size_t slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(Errc::invalid_argument, "malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer q(den);
  if (q == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + s + "'");
  Rational r(Integer(num), q);
  r.canonicalize();
  return r;
}

/// Always "p/q", including integers ("1/1") and zero ("0/1").
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// a/b in canonical form. mpq_class(a, b) alone does not canonicalize.
inline Rational frac(long a, long b) {
  if (b == 0) throw Error(Errc::invalid_argument, "zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace wzw
