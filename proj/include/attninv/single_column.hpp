#pragma once

#include <functional>
#include <vector>

#include "attninv/invariant_set.hpp"
#include "attninv/model.hpp"

namespace attninv {

/*
 * Basis element of the trace-zero operators acting on cubics:
 * Diagonal(u) is H_u = E_uu - E_dd for u < d, OffDiagonal(u, v) is
 * E_uv = x_u d/dx_v for u != v. Basis order: H_1 .. H_{d-1}, then E_uv
 * lexicographic in (u, v), for d^2 - 1 elements total.
 */
struct LieBasisElement {
  bool diagonal;
  int u, v;  // diagonal: (u, u); off-diagonal: (u, v) with u != v
};

inline std::vector<LieBasisElement> lie_basis(int d) {
  std::vector<LieBasisElement> basis;
  for (int u = 1; u < d; ++u) basis.push_back({true, u, u});
  for (int u = 1; u <= d; ++u)
    for (int v = 1; v <= d; ++v)
      if (u != v) basis.push_back({false, u, v});
  return basis;
}

// Accessor for a symmetric order-3 tensor; callers pass sorted or unsorted
// triples, values are looked up on the sorted triple.
using SymmetricTensorView = std::function<MultiPoly(int, int, int)>;

// The symbolic coefficient tensor of the single-column cubic in target
// column j and output row `row`: T(k1,k2,k3) = y_j({k1,k2,k3}).
inline SymmetricTensorView symbolic_tensor(int row, int j) {
  return [row, j](int k1, int k2, int k3) {
    return MultiPoly::var(VarId::coeff_y(MonomialLabel::single(row, {k1, k2, k3}, j)));
  };
}

inline SymmetricTensorView constant_tensor(const std::map<std::array<int, 3>, Rational>& vals) {
  return [vals](int k1, int k2, int k3) {
    std::array<int, 3> key{k1, k2, k3};
    std::sort(key.begin(), key.end());
    auto it = vals.find(key);
    return MultiPoly::constant(it == vals.end() ? Rational(0) : it->second);
  };
}

// Cubic exponent vectors in d variables, graded-lex descending; the row
// order of every flattening matrix (x1^3, x1^2 x2, ..., xd^3).
inline std::vector<std::vector<int>> cubic_exponents(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  rec(0, 3);
  return out;
}

namespace detail {

// Coefficient of the cubic monomial with exponent vector `e` in x_u * g_v,
// where g_v(x) = sum_{k,m} T(k,m,v) x_k x_m.
inline MultiPoly xu_gv_coefficient(const std::vector<int>& e, int u, int v,
                                   const SymmetricTensorView& T) {
  if (e[u - 1] == 0) return MultiPoly();
  std::vector<int> q = e;
  q[u - 1] -= 1;
  int k = 0, m = 0;
  for (int idx = 0; idx < int(q.size()); ++idx) {
    for (int c = 0; c < q[idx]; ++c) {
      if (k == 0)
        k = idx + 1;
      else
        m = idx + 1;
    }
  }
  Rational omega(k == m ? 1 : 2);
  return T(k, m, v).times_scalar(omega);
}

}  // namespace detail

/*
 * Lie algebra flattening matrix of the cubic with symmetric coefficient
 * tensor T: rows indexed by cubic monomials in graded-lex order, columns by
 * the lie_basis order. The column of E_uv holds the coefficients of
 * x_u * g_v with g_v = sum_{k,m} T(k,m,v) x_k x_m, which is (1/3) E_uv(f)
 * for f = sum |Perm(K)| T(K) x^K; the column of H_u is x_u g_u - x_d g_d.
 */
inline PolyMatrix lie_flattening(int d, const SymmetricTensorView& T) {
  if (d < 2) throw DimensionTooSmallError("lie_flattening: requires d >= 2");
  auto rows = cubic_exponents(d);
  auto basis = lie_basis(d);
  PolyMatrix m(rows.size(), basis.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < basis.size(); ++c) {
      const auto& b = basis[c];
      if (b.diagonal)
        m.at(r, c) = detail::xu_gv_coefficient(rows[r], b.u, b.u, T) -
                     detail::xu_gv_coefficient(rows[r], d, d, T);
      else
        m.at(r, c) = detail::xu_gv_coefficient(rows[r], b.u, b.v, T);
    }
  return m;
}

// Full gl_d version: columns (v, u) with v outer, matching the syzygy-system
// matrix of the d=3 example (alpha_1..alpha_d for f_{x_1}, then beta, ...).
inline PolyMatrix gl_flattening(int d, const SymmetricTensorView& T) {
  if (d < 2) throw DimensionTooSmallError("gl_flattening: requires d >= 2");
  auto rows = cubic_exponents(d);
  PolyMatrix m(rows.size(), size_t(d) * d);
  for (size_t r = 0; r < rows.size(); ++r) {
    size_t c = 0;
    for (int v = 1; v <= d; ++v)
      for (int u = 1; u <= d; ++u)
        m.at(r, c++) = detail::xu_gv_coefficient(rows[r], u, v, T);
  }
  return m;
}

/*
 * Maximal (d^2-1) x (d^2-1) minors of the Lie flattening of the symbolic
 * single-column tensor: the split-(2,1) Chow invariants. Symbolic generation
 * is feasible for d = 3 (degree-8 minors of the 10 x 8 matrix); for d >= 4
 * the minor size exceeds the symbolic cap and evaluation-based rank checks
 * are used instead.
 */
inline InvariantSet lie_maximal_minors(int d, size_t size_cap = kDefaultDetCap) {
  if (d < 3) throw DimensionTooSmallError("lie_maximal_minors: requires d >= 3");
  size_t minor = size_t(d) * d - 1;
  InvariantSet set(Family::LieMinors, Shape(d, 1, d, 1));
  set.params["j"] = "1";
  set.params["row"] = "1";
  if (minor > size_cap)
    throw SizeCapExceededError("lie_maximal_minors: symbolic minors capped at size " +
                               std::to_string(size_cap) + " (d >= 4 is evaluation-only)");
  PolyMatrix m = lie_flattening(d, symbolic_tensor(1, 1));
  set.polys = all_minors(m, minor, size_cap);
  return set;
}

// d x d specialization N(j,j,j): entry (k, k3) is the coordinate of the
// sorted triple {k, k, k3}.
inline PolyMatrix n_matrix(int d, int row = 1, int j = 1) {
  PolyMatrix m(d, d);
  for (int k = 1; k <= d; ++k)
    for (int k3 = 1; k3 <= d; ++k3)
      m.at(k - 1, k3 - 1) =
          MultiPoly::var(VarId::coeff_y(MonomialLabel::single(row, {k, k, k3}, j)));
  return m;
}

// All (2a+2) x (2a+2) minors of N, nontrivial exactly when 2a+1 < d;
// otherwise the returned set is empty (the rank bound is vacuous).
inline InvariantSet n_matrix_minors(int d, int a) {
  InvariantSet set(Family::NMatrixMinors, Shape(d, 1, a, 1));
  set.params["j"] = "1";
  set.params["row"] = "1";
  if (2 * a + 1 >= d) return set;
  set.polys = all_minors(n_matrix(d), size_t(2 * a + 2));
  return set;
}

// Evaluates a polynomial matrix of constants into a rational matrix.
inline RatMatrix evaluate_matrix(const PolyMatrix& m,
                                 const std::map<VarId, Rational>& assignment) {
  RatMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).evaluate(assignment);
  return r;
}

// Substitutes polynomial images into every entry.
inline PolyMatrix substitute_matrix(const PolyMatrix& m,
                                    const std::map<VarId, MultiPoly>& images) {
  PolyMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).substitute(images);
  return r;
}

}  // namespace attninv
