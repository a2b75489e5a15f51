#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "attninv/monomial.hpp"
#include "attninv/rational.hpp"

namespace attninv {

/*
 * Sparse multivariate polynomial over Rational. Terms are kept in canonical
 * order (graded-lex descending over the VarId total order, leading term
 * first) with no zero coefficients, so equality is plain term-list equality
 * and serialization is deterministic.
 */
class MultiPoly {
 public:
  struct Term {
    Monomial m;
    Rational c;
  };

  MultiPoly() = default;
  explicit MultiPoly(const Rational& c) { *this = constant(c); }

  static MultiPoly zero() { return MultiPoly(); }

  static MultiPoly constant(Rational c) {
    MultiPoly p;
    if (!c.is_zero()) p.t_.push_back({Monomial::one(), std::move(c)});
    return p;
  }

  static MultiPoly var(VarId v) {
    MultiPoly p;
    p.t_.push_back({Monomial(v), Rational(1)});
    return p;
  }

  static MultiPoly term(Monomial m, Rational c) {
    MultiPoly p;
    if (!c.is_zero()) p.t_.push_back({std::move(m), std::move(c)});
    return p;
  }

  // Terms may arrive in any order; duplicates are combined.
  static MultiPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
    MultiPoly p;
    for (auto& t : terms) {
      if (!p.t_.empty() && p.t_.back().m == t.m)
        p.t_.back().c += t.c;
      else
        p.t_.push_back(std::move(t));
      if (!p.t_.empty() && p.t_.back().c.is_zero()) p.t_.pop_back();
    }
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  uint32_t degree() const {
    uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.degree());
    return d;
  }

  const Term& leading_term() const {
    if (t_.empty()) throw Error("MultiPoly: leading term of zero");
    return t_.front();
  }

  Rational coefficient(const Monomial& m) const {
    // Binary search in descending order.
    size_t lo = 0, hi = t_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      int c = Monomial::cmp(t_[mid].m, m);
      if (c == 0) return t_[mid].c;
      if (c > 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return Rational(0);
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

  MultiPoly& operator+=(const MultiPoly& o) { *this = *this + o; return *this; }
  MultiPoly& operator-=(const MultiPoly& o) { *this = *this - o; return *this; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    if (b.t_.size() == 1) return a.times_term(b.t_[0].m, b.t_[0].c);
    if (a.t_.size() == 1) return b.times_term(a.t_[0].m, a.t_[0].c);
    // Accumulate into a hash map, then restore canonical order once.
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.t_.size() * 2);
    const MultiPoly& big = a.t_.size() >= b.t_.size() ? a : b;
    const MultiPoly& small = a.t_.size() >= b.t_.size() ? b : a;
    for (const auto& ts : small.t_)
      for (const auto& tb : big.t_) {
        Monomial m = tb.m * ts.m;
        auto [it, fresh] = acc.try_emplace(std::move(m), Rational(0));
        it->second += tb.c * ts.c;
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const Term& x, const Term& y) { return Monomial::cmp(x.m, y.m) > 0; });
    MultiPoly r;
    r.t_ = std::move(out);
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

  // Multiplying every term by a fixed monomial preserves the term order.
  MultiPoly times_term(const Monomial& m, const Rational& c) const {
    MultiPoly r;
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
    return r;
  }

  MultiPoly times_scalar(const Rational& c) const {
    return times_term(Monomial::one(), c);
  }

  MultiPoly pow(uint32_t e) const {
    MultiPoly r = constant(Rational(1));
    for (uint32_t i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Exact division; throws if the divisor does not divide evenly.
  friend MultiPoly exact_div(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw Error("MultiPoly: division by zero polynomial");
    if (num.is_zero()) return MultiPoly();
    if (den.t_.size() == 1) {
      const auto& lt = den.t_[0];
      MultiPoly q;
      q.t_.reserve(num.t_.size());
      for (const auto& t : num.t_) {
        if (!lt.m.divides(t.m))
          throw Error("MultiPoly: inexact division");
        q.t_.push_back({lt.m.divide_into(t.m), t.c / lt.c});
      }
      return q;
    }
    MultiPoly rem = num;
    std::vector<Term> qt;
    const Term& dl = den.leading_term();
    while (!rem.is_zero()) {
      const Term& rl = rem.leading_term();
      if (!dl.m.divides(rl.m)) throw Error("MultiPoly: inexact division");
      Term t{dl.m.divide_into(rl.m), rl.c / dl.c};
      qt.push_back(t);
      rem = rem - den.times_term(t.m, t.c);
    }
    MultiPoly q;
    q.t_ = std::move(qt);  // quotient terms are produced in descending order
    return q;
  }

  // Exact evaluation; every variable occurring in the polynomial must be
  // present in the assignment.
  template <class Map>
  Rational evaluate(const Map& assignment) const {
    Rational acc(0);
    for (const auto& t : t_) {
      Rational prod = t.c;
      for (const auto& [v, e] : t.m.factors()) {
        auto it = assignment.find(v);
        if (it == assignment.end())
          throw VariableMismatchError("MultiPoly: unassigned variable " + v.str());
        Rational p = it->second;
        for (uint32_t i = 0; i < e; ++i) prod *= p;
        if (prod.is_zero()) break;
      }
      acc += prod;
    }
    return acc;
  }

  // Substitutes polynomials for variables. Variables absent from the map are
  // left untouched. Evaluates Horner-style, one substituted variable at a
  // time, so shared subproducts are computed once.
  MultiPoly substitute(const std::map<VarId, MultiPoly>& images) const {
    std::map<std::pair<VarId, uint32_t>, MultiPoly> power_cache;
    return subst_rec(*this, images, power_cache);
  }

  // Groups terms by their sub-monomial in the variables selected by `pick`.
  // Returns sub-monomial -> cofactor polynomial, in canonical order.
  template <class Pred>
  std::map<Monomial, MultiPoly, MonomialBefore> split_by(Pred pick) const {
    std::map<Monomial, MultiPoly, MonomialBefore> groups;
    for (const auto& t : t_) {
      Monomial sel, rest;
      for (const auto& [v, e] : t.m.factors())
        (pick(v) ? sel : rest).push_factor_unchecked(v, e);
      groups[sel].t_.push_back({rest, t.c});
    }
    // Each group received terms in the global descending order, which is also
    // descending for the residual monomials within a fixed selected part?
    // Not necessarily; restore order explicitly.
    for (auto& [m, p] : groups) {
      std::sort(p.t_.begin(), p.t_.end(),
                [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
    }
    return groups;
  }

  MultiPoly derivative(VarId v) const {
    std::vector<Term> out;
    for (const auto& t : t_) {
      uint32_t e = t.m.exponent_of(v);
      if (e == 0) continue;
      Monomial m;
      for (const auto& [w, k] : t.m.factors()) {
        if (w == v) {
          if (k > 1) m.push_factor_unchecked(w, k - 1);
        } else {
          m.push_factor_unchecked(w, k);
        }
      }
      out.push_back({std::move(m), t.c * Rational(long(e))});
    }
    return from_terms(std::move(out));
  }

  std::set<VarId> variables() const {
    std::set<VarId> vs;
    for (const auto& t : t_)
      for (const auto& [v, e] : t.m.factors()) vs.insert(v);
    return vs;
  }

  // Multiplies through by the lcm of coefficient denominators, then divides
  // by the gcd of numerators; sign chosen so the leading coefficient is
  // positive. Returns the integer-cleared polynomial.
  MultiPoly integer_cleared() const {
    if (is_zero()) return *this;
    mpz_class l(1), g(0);
    for (const auto& t : t_) {
      mpz_class den = t.c.den();
      mpz_class tmp;
      mpz_lcm(tmp.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
      l = tmp;
    }
    for (const auto& t : t_) {
      mpz_class num = t.c.num() * (l / t.c.den());
      mpz_class tmp;
      mpz_gcd(tmp.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      g = tmp;
    }
    Rational scale = Rational(mpz_class(l)) / Rational(mpz_class(g));
    if (t_.front().c.sign() < 0) scale = -scale;
    return times_scalar(scale);
  }

  std::string str() const;

  static MultiPoly parse(const std::string& s);

 private:
  static MultiPoly subst_rec(const MultiPoly& p,
                             const std::map<VarId, MultiPoly>& images,
                             std::map<std::pair<VarId, uint32_t>, MultiPoly>& power_cache) {
    // Smallest substituted variable occurring in p.
    bool found = false;
    VarId pivot;
    for (const auto& t : p.t_)
      for (const auto& [v, e] : t.m.factors())
        if (images.count(v) && (!found || v < pivot)) {
          pivot = v;
          found = true;
        }
    if (!found) return p;

    // Partition by the pivot exponent; dividing out a common power preserves
    // the term order within each group.
    std::map<uint32_t, MultiPoly, std::greater<uint32_t>> groups;
    for (const auto& t : p.t_) {
      uint32_t e = t.m.exponent_of(pivot);
      Monomial rest;
      for (const auto& [v, k] : t.m.factors())
        if (v != pivot) rest.push_factor_unchecked(v, k);
      groups[e].t_.push_back({std::move(rest), t.c});
    }

    auto power_of = [&](uint32_t e) -> const MultiPoly& {
      auto key = std::make_pair(pivot, e);
      auto it = power_cache.find(key);
      if (it != power_cache.end()) return it->second;
      const MultiPoly& base = images.at(pivot);
      MultiPoly q = base;
      for (uint32_t i = 1; i < e; ++i) q = q * base;
      return power_cache.emplace(key, std::move(q)).first->second;
    };

    MultiPoly acc;
    uint32_t prev = 0;
    bool first = true;
    for (auto& [e, sub] : groups) {  // exponents descending
      MultiPoly s = subst_rec(sub, images, power_cache);
      if (first) {
        acc = std::move(s);
        first = false;
      } else {
        acc = acc * power_of(prev - e) + s;
      }
      prev = e;
    }
    if (prev > 0) acc = acc * power_of(prev);
    return acc;
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    size_t i = 0, j = 0;
    while (i < a.t_.size() && j < b.t_.size()) {
      int c = Monomial::cmp(a.t_[i].m, b.t_[j].m);
      if (c > 0)
        r.t_.push_back(a.t_[i++]);
      else if (c < 0) {
        r.t_.push_back(b.t_[j]);
        if (subtract) r.t_.back().c = -r.t_.back().c;
        ++j;
      } else {
        Rational c2 = subtract ? a.t_[i].c - b.t_[j].c : a.t_[i].c + b.t_[j].c;
        if (!c2.is_zero()) r.t_.push_back({a.t_[i].m, std::move(c2)});
        ++i, ++j;
      }
    }
    for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
    for (; j < b.t_.size(); ++j) {
      r.t_.push_back(b.t_[j]);
      if (subtract) r.t_.back().c = -r.t_.back().c;
    }
    return r;
  }

  std::vector<Term> t_;
};

/*
 * Canonical text form. Terms in canonical order, joined by " + " / " - ";
 * coefficient magnitudes printed as p or p/q, suppressed when 1 on a
 * non-constant monomial; "0" for the zero polynomial.
 */
inline std::string MultiPoly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : t_) {
    Rational mag = t.c.abs();
    bool neg = t.c.sign() < 0;
    if (first) {
      if (neg) s += '-';
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (t.m.is_constant()) {
      s += mag.str();
    } else if (mag.is_one()) {
      s += t.m.str();
    } else {
      s += mag.str() + "*" + t.m.str();
    }
  }
  return s;
}

inline MultiPoly MultiPoly::parse(const std::string& s) {
  // Split on top-level " + " / " - " (no parentheses at term level; variable
  // names contain '(' but never surrounded by spaces).
  std::vector<MultiPoly::Term> terms;
  size_t pos = 0;
  int sign = 1;
  auto skip_ws = [&]() { while (pos < s.size() && s[pos] == ' ') ++pos; };
  skip_ws();
  if (pos < s.size() && s[pos] == '-') { sign = -1; ++pos; }
  while (pos < s.size()) {
    skip_ws();
    size_t end = pos;
    while (end + 2 < s.size() &&
           !(s[end] == ' ' && (s[end + 1] == '+' || s[end + 1] == '-') && s[end + 2] == ' '))
      ++end;
    if (end + 2 >= s.size()) end = s.size();
    std::string chunk = s.substr(pos, end - pos);
    // Parse one term: [coeff] ['*'] factor ('*' factor)*
    Rational coeff(1);
    Monomial mono;
    size_t cp = 0;
    auto is_coeff_start = [&](size_t q) {
      return q < chunk.size() && (isdigit(static_cast<unsigned char>(chunk[q])));
    };
    if (is_coeff_start(cp)) {
      size_t q = cp;
      while (q < chunk.size() && (isdigit(static_cast<unsigned char>(chunk[q])) || chunk[q] == '/'))
        ++q;
      coeff = Rational::parse(chunk.substr(cp, q - cp));
      cp = q;
      if (cp < chunk.size() && chunk[cp] == '*') {
        ++cp;
        if (cp >= chunk.size())
          throw ParseError("MultiPoly: dangling '*' in '" + chunk + "'");
      }
    }
    std::vector<Monomial::Factor> factors;
    while (cp < chunk.size()) {
      size_t q = cp;
      while (q < chunk.size() && chunk[q] != '*' && chunk[q] != '^') ++q;
      std::string vname = chunk.substr(cp, q - cp);
      if (vname.empty()) throw ParseError("MultiPoly: empty factor in '" + chunk + "'");
      VarId v = parse_varid(vname);
      uint32_t e = 1;
      cp = q;
      if (cp < chunk.size() && chunk[cp] == '^') {
        ++cp;
        size_t r = cp;
        while (r < chunk.size() && isdigit(static_cast<unsigned char>(chunk[r]))) ++r;
        if (r == cp) throw ParseError("MultiPoly: missing exponent in '" + chunk + "'");
        e = static_cast<uint32_t>(std::stoul(chunk.substr(cp, r - cp)));
        cp = r;
      }
      factors.emplace_back(v, e);
      if (cp < chunk.size()) {
        if (chunk[cp] != '*') throw ParseError("MultiPoly: expected '*' in '" + chunk + "'");
        ++cp;
      }
    }
    std::sort(factors.begin(), factors.end(),
              [](const Monomial::Factor& a, const Monomial::Factor& b) { return a.first < b.first; });
    for (size_t q = 0; q + 1 < factors.size(); ++q)
      if (factors[q].first == factors[q + 1].first)
        throw ParseError("MultiPoly: repeated variable in '" + chunk + "'");
    for (const auto& [v, e] : factors) mono.push_factor_unchecked(v, e);
    Rational c = sign < 0 ? -coeff : coeff;
    terms.push_back({std::move(mono), std::move(c)});
    pos = end;
    if (pos < s.size()) {
      // at " + " or " - "
      sign = s[pos + 1] == '-' ? -1 : 1;
      pos += 3;
    }
  }
  // "0" parses as a single constant term 0, dropped by from_terms.
  return MultiPoly::from_terms(std::move(terms));
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
  return os << p.str();
}

}  // namespace attninv
