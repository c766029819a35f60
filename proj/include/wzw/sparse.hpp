#pragma once

#include <map>
#include <utility>

#include "wzw/rational.hpp"

namespace wzw {

/// Finite linear combination of basis keys with exact coefficients.
/// Zero coefficients are never stored.
template <typename Key>
class SparseVector {
 public:
  using map_type = std::map<Key, Rational>;
  using const_iterator = typename map_type::const_iterator;

  SparseVector() = default;
  explicit SparseVector(const Key& k, Rational c = Rational(1)) {
    if (c != 0) terms_.emplace(k, std::move(c));
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  Rational coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add_scaled(const SparseVector& other, const Rational& c) {
    if (c == 0) return;
    for (const auto& [k, v] : other.terms_) add(k, v * c);
  }

  SparseVector& operator+=(const SparseVector& o) {
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    for (const auto& [k, v] : o.terms_) add(k, -v);
    return *this;
  }
  SparseVector& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= c;
    }
    return *this;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rational& c, SparseVector a) { return a *= c; }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

}  // namespace wzw
