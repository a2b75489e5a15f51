#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attninv/varid.hpp"

namespace attninv {

/*
 * Power product of variables: factors sorted ascending by VarId, exponents
 * strictly positive, no repeated VarId. The empty factor list is the
 * constant monomial.
 */
class Monomial {
 public:
  using Factor = std::pair<VarId, uint32_t>;

  Monomial() = default;
  explicit Monomial(VarId v, uint32_t e = 1) {
    if (e > 0) f_.emplace_back(v, e);
  }

  static Monomial one() { return Monomial(); }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_constant() const { return f_.empty(); }

  uint32_t degree() const {
    uint32_t d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
  }

  uint32_t exponent_of(VarId v) const {
    for (const auto& [w, e] : f_)
      if (w == v) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
      if (f_[i].first < o.f_[j].first)
        r.f_.push_back(f_[i++]);
      else if (o.f_[j].first < f_[i].first)
        r.f_.push_back(o.f_[j++]);
      else {
        r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
        ++i, ++j;
      }
    }
    for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
    for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
    return r;
  }

  bool divides(const Monomial& m) const {
    size_t i = 0;
    for (const auto& [v, e] : f_) {
      while (i < m.f_.size() && m.f_[i].first < v) ++i;
      if (i >= m.f_.size() || !(m.f_[i].first == v) || m.f_[i].second < e) return false;
    }
    return true;
  }

  // Caller must ensure divides(m) holds on the divisor.
  Monomial divide_into(const Monomial& m) const {
    Monomial r;
    size_t i = 0;
    for (const auto& [v, e] : m.f_) {
      if (i < f_.size() && f_[i].first == v) {
        uint32_t q = e - f_[i].second;
        if (q > 0) r.f_.emplace_back(v, q);
        ++i;
      } else {
        r.f_.emplace_back(v, e);
      }
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a.f_ == b.f_); }

  // Graded-lexicographic comparison over the VarId total order: higher total
  // degree first; ties broken by the smallest VarId at which the exponents
  // differ, larger exponent first. Returns +1 if a precedes b in canonical
  // (descending) term order, -1 if b precedes a, 0 if equal.
  static int cmp(const Monomial& a, const Monomial& b) {
    uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    size_t i = 0, j = 0;
    while (i < a.f_.size() && j < b.f_.size()) {
      if (a.f_[i].first < b.f_[j].first) return 1;   // a has the smaller variable
      if (b.f_[j].first < a.f_[i].first) return -1;
      if (a.f_[i].second != b.f_[j].second)
        return a.f_[i].second > b.f_[j].second ? 1 : -1;
      ++i, ++j;
    }
    if (i < a.f_.size()) return 1;
    if (j < b.f_.size()) return -1;
    return 0;
  }

  size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [v, e] : f_) {
      h ^= v.key() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  // "1" for the constant monomial, else factors joined by '*' with '^e'.
  std::string str() const {
    if (f_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < f_.size(); ++i) {
      if (i) s += '*';
      s += f_[i].first.str();
      if (f_[i].second > 1) s += '^' + std::to_string(f_[i].second);
    }
    return s;
  }

  void push_factor_unchecked(VarId v, uint32_t e) { f_.emplace_back(v, e); }

 private:
  std::vector<Factor> f_;
};

// Canonical (descending) term-order predicate: true when a precedes b.
struct MonomialBefore {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::cmp(a, b) > 0;
  }
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace attninv
