#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "attninv/matrix.hpp"
#include "attninv/multipoly.hpp"
#include "attninv/varid.hpp"

namespace attninv {

struct Shape {
  int d = 1;        // embedding dimension
  int t = 1;        // sequence length
  int a = 1;        // attention dimension
  int d_prime = 1;  // output dimension

  Shape() = default;
  Shape(int d_, int t_, int a_, int d_prime_) : d(d_), t(t_), a(a_), d_prime(d_prime_) {
    if (d < 1 || t < 1 || a < 1 || d_prime < 1)
      throw DimensionMismatchError("Shape: all dimensions must be positive");
  }

  friend bool operator==(const Shape& x, const Shape& y) {
    return x.d == y.d && x.t == y.t && x.a == y.a && x.d_prime == y.d_prime;
  }
};

// Number of distinct orderings of a multiset of size 2 or 3 (1, 2, 3, or 6).
inline int perm_orbit_size(const std::vector<int>& ms) {
  if (ms.size() == 2) return ms[0] == ms[1] ? 1 : 2;
  if (ms.size() == 3) {
    if (ms[0] == ms[1] && ms[1] == ms[2]) return 1;
    if (ms[0] == ms[1] || ms[1] == ms[2] || ms[0] == ms[2]) return 3;
    return 6;
  }
  throw DimensionMismatchError("perm_orbit_size: multiset must have size 2 or 3");
}

inline int orbit_size(const MonomialLabel& l) {
  if (l.is_cross()) return perm_orbit_size({l.k[0], l.k[1]});
  return perm_orbit_size({l.k[0], l.k[1], l.k[2]});
}

// Sorted multisets of size r over [d], lexicographic ascending.
inline std::vector<std::vector<int>> multisets(int d, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r);
  std::function<void(int, int)> rec = [&](int lo, int depth) {
    if (depth == r) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= d; ++v) {
      cur[depth] = v;
      rec(v, depth + 1);
    }
  };
  rec(1, 0);
  return out;
}

// All ambient coordinate labels of the shape, in canonical (VarId) order.
// One label per (row, target j, single-column multiset) and per
// (row, context n != target j, cross-column multiset, target index).
inline std::vector<MonomialLabel> enumerate_labels(const Shape& s) {
  std::vector<MonomialLabel> out;
  for (int i = 1; i <= s.d_prime; ++i) {
    for (int j = 1; j <= s.t; ++j)
      for (const auto& K : multisets(s.d, 3))
        out.push_back(MonomialLabel::single(i, {K[0], K[1], K[2]}, j));
    for (int j = 1; j <= s.t; ++j)
      for (int n = 1; n <= s.t; ++n) {
        if (n == j) continue;
        for (const auto& A : multisets(s.d, 2))
          for (int b = 1; b <= s.d; ++b)
            out.push_back(MonomialLabel::cross(i, {A[0], A[1]}, b, n, j));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LabelCounts {
  long per_coordinate = 0;  // distinct monomials in one output coordinate
  long total = 0;           // N_phi(d, t), across all output coordinates
  long ambient_cubics = 0;  // all cubic monomials in d*t variables
};

inline long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline LabelCounts count_labels(const Shape& s) {
  LabelCounts c;
  long d = s.d, t = s.t;
  c.total = d * t * (d + 1) * (3 * d * t - 2 * d + 2) / 6;
  c.per_coordinate = c.total / t;
  c.ambient_cubics = binom(d * t + 2, 3);
  return c;
}

namespace detail {

template <class Fn>
void for_each_permutation(std::vector<int> ms, Fn fn) {
  std::sort(ms.begin(), ms.end());
  do {
    fn(ms);
  } while (std::next_permutation(ms.begin(), ms.end()));
}

}  // namespace detail

// The scaled coefficient y as a polynomial in the a[m,l] and v[i,k]
// parameters: bilinear, with the 1/|orbit| scaling.
//   single-column K:   (1/|Perm K|) sum over (p1,p2,p3) in Perm(K) of a[p2,p3] v[i,p1]
//   cross-column A,b:  (1/|Perm A|) sum over (p1,p2) in Perm(A) of a[p2,b] v[i,p1]
inline MultiPoly symbolic_coefficient(const MonomialLabel& l) {
  std::vector<MultiPoly::Term> terms;
  Rational scale(1, orbit_size(l));
  if (l.is_cross()) {
    detail::for_each_permutation({l.k[0], l.k[1]}, [&](const std::vector<int>& p) {
      Monomial m = Monomial(VarId::param_a(p[1], l.k[2])) * Monomial(VarId::param_v(l.row, p[0]));
      terms.push_back({std::move(m), scale});
    });
  } else {
    detail::for_each_permutation({l.k[0], l.k[1], l.k[2]}, [&](const std::vector<int>& p) {
      Monomial m = Monomial(VarId::param_a(p[1], p[2])) * Monomial(VarId::param_v(l.row, p[0]));
      terms.push_back({std::move(m), scale});
    });
  }
  return MultiPoly::from_terms(std::move(terms));
}

/*
 * Exact parameter matrices Q, K, V with the derived attention matrix
 * A = K^T Q computed once and cached. rank(A) <= a holds by construction
 * and is asserted.
 */
struct WeightAssignment {
  RatMatrix Q;  // a x d
  RatMatrix K;  // a x d
  RatMatrix V;  // d' x d
  RatMatrix A;  // d x d, = K^T Q

  WeightAssignment(RatMatrix q, RatMatrix k, RatMatrix v)
      : Q(std::move(q)), K(std::move(k)), V(std::move(v)) {
    if (Q.rows() != K.rows() || Q.cols() != K.cols() || V.cols() != Q.cols())
      throw DimensionMismatchError("WeightAssignment: inconsistent matrix shapes");
    A = K.transpose() * Q;
    if (rank_rational(A) > Q.rows())
      throw Error("WeightAssignment: rank(A) exceeds attention dimension");
  }

  void check_shape(const Shape& s) const {
    if (int(Q.rows()) != s.a || int(Q.cols()) != s.d || int(V.rows()) != s.d_prime ||
        int(V.cols()) != s.d)
      throw DimensionMismatchError("WeightAssignment: shape mismatch");
  }
};

// A point of the ambient coefficient space: label -> exact value, with the
// VarId-keyed view used to evaluate invariants.
class CoefficientPoint {
 public:
  void set(const MonomialLabel& l, Rational v) { m_[VarId::coeff_y(l)] = std::move(v); }

  const Rational& get(const MonomialLabel& l) const {
    auto it = m_.find(VarId::coeff_y(l));
    if (it == m_.end()) throw VariableMismatchError("CoefficientPoint: missing label");
    return it->second;
  }

  const std::map<VarId, Rational>& assignment() const { return m_; }

  auto find(VarId v) const { return m_.find(v); }
  auto end() const { return m_.end(); }
  size_t size() const { return m_.size(); }

 private:
  std::map<VarId, Rational> m_;
};

// The parametrization map: evaluates every scaled coefficient of the shape
// at the given weights. Cross-column values are independent of (n, j) and
// single-column values independent of j, so sequence-copy equalities hold
// exactly by construction of the formulas.
inline CoefficientPoint evaluate_mu(const Shape& s, const WeightAssignment& w) {
  w.check_shape(s);
  CoefficientPoint pt;
  for (const auto& l : enumerate_labels(s)) {
    Rational acc(0);
    if (l.is_cross()) {
      detail::for_each_permutation({l.k[0], l.k[1]}, [&](const std::vector<int>& p) {
        acc += w.A.at(p[1] - 1, l.k[2] - 1) * w.V.at(l.row - 1, p[0] - 1);
      });
    } else {
      detail::for_each_permutation({l.k[0], l.k[1], l.k[2]}, [&](const std::vector<int>& p) {
        acc += w.A.at(p[1] - 1, p[2] - 1) * w.V.at(l.row - 1, p[0] - 1);
      });
    }
    pt.set(l, acc * Rational(1, orbit_size(l)));
  }
  return pt;
}

// Images of coordinate variables under the parametrization, for symbolic
// substitution checks.
inline std::map<VarId, MultiPoly> symbolic_mu_images(const std::set<VarId>& vars) {
  std::map<VarId, MultiPoly> m;
  for (VarId v : vars)
    if (v.cls() == VarClass::CoeffY) m[v] = symbolic_coefficient(v.label());
  return m;
}

inline MultiPoly substitute_mu(const MultiPoly& p) {
  return p.substitute(symbolic_mu_images(p.variables()));
}

inline constexpr int kExpandOracleCap = 12;  // on d*t

// Independent oracle for evaluate_mu: expands V X (X^T A X) with symbolic
// input entries x[k,n], reads off the standard coefficient of every cubic
// monomial, and divides by the orbit size. Deliberately brute force.
inline CoefficientPoint expand_output_polynomial(const Shape& s, const WeightAssignment& w) {
  w.check_shape(s);
  if (s.d * s.t > kExpandOracleCap)
    throw SizeCapExceededError("expand_output_polynomial: d*t exceeds oracle cap");

  // Symbolic input matrix and the product V X (X^T A X), entry by entry.
  PolyMatrix X(s.d, s.t);
  for (int k = 0; k < s.d; ++k)
    for (int n = 0; n < s.t; ++n) X.at(k, n) = MultiPoly::var(VarId::input_x(k + 1, n + 1));
  PolyMatrix Apoly(s.d, s.d), Vpoly(s.d_prime, s.d);
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j) Apoly.at(i, j) = MultiPoly::constant(w.A.at(i, j));
  for (int i = 0; i < s.d_prime; ++i)
    for (int j = 0; j < s.d; ++j) Vpoly.at(i, j) = MultiPoly::constant(w.V.at(i, j));
  PolyMatrix out = Vpoly * X * (X.transpose() * Apoly * X);

  CoefficientPoint pt;
  for (const auto& l : enumerate_labels(s)) {
    // Build the monomial x_{k1 c1} x_{k2 c2} x_{k3 c3} of the label.
    Monomial mono;
    std::array<std::pair<int, int>, 3> pairs;
    if (l.is_cross())
      pairs = {{{l.k[0], l.n}, {l.k[1], l.n}, {l.k[2], l.j}}};
    else
      pairs = {{{l.k[0], l.j}, {l.k[1], l.j}, {l.k[2], l.j}}};
    std::map<VarId, uint32_t> exps;
    for (auto [k, c] : pairs) exps[VarId::input_x(k, c)] += 1;
    for (auto& [v, e] : exps) mono.push_factor_unchecked(v, e);
    Rational c = out.at(l.row - 1, l.j - 1).coefficient(mono);
    pt.set(l, c * Rational(1, orbit_size(l)));
  }
  return pt;
}

inline constexpr int kCountOracleCap = 16;  // on d*t; no coefficient bookkeeping

// Distinct cubic monomials across all output coordinates of the expanded
// map; the brute-force side of the monomial-count identity. Expands with
// fully symbolic A and V so no numeric cancellation can hide support.
inline long count_monomials_by_expansion(const Shape& s) {
  if (s.d * s.t > kCountOracleCap)
    throw SizeCapExceededError("count_monomials_by_expansion: d*t exceeds oracle cap");
  PolyMatrix X(s.d, s.t);
  for (int k = 0; k < s.d; ++k)
    for (int n = 0; n < s.t; ++n) X.at(k, n) = MultiPoly::var(VarId::input_x(k + 1, n + 1));
  PolyMatrix Apoly(s.d, s.d), Vpoly(1, s.d);
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j) Apoly.at(i, j) = MultiPoly::var(VarId::param_a(i + 1, j + 1));
  for (int j = 0; j < s.d; ++j) Vpoly.at(0, j) = MultiPoly::var(VarId::param_v(1, j + 1));
  PolyMatrix out = Vpoly * X * (X.transpose() * Apoly * X);
  std::set<Monomial, MonomialBefore> monos;
  for (size_t i = 0; i < out.rows(); ++i)
    for (size_t j = 0; j < out.cols(); ++j)
      for (const auto& t : out.at(i, j).terms()) {
        Monomial xpart;
        for (const auto& [v, e] : t.m.factors())
          if (v.cls() == VarClass::InputX) xpart.push_factor_unchecked(v, e);
        monos.insert(xpart);
      }
  return long(monos.size());
}

}  // namespace attninv
