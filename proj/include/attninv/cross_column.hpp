#pragma once

#include <array>
#include <map>
#include <vector>

#include "attninv/invariant_set.hpp"
#include "attninv/model.hpp"

namespace attninv {

namespace detail {

inline MultiPoly ycross(int row, int k1, int k2, int b, int n, int j) {
  return MultiPoly::var(VarId::coeff_y(MonomialLabel::cross(row, {k1, k2}, b, n, j)));
}

inline void require_context(int n, int j) {
  if (n == j) throw ContextEqualsTargetError("context column equals target column");
}

inline Rational omega(int p, int q) { return Rational(p == q ? 1 : 2); }

inline std::string tuple_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace detail

/*
 * Symmetric d x d slices of the cross-column coefficient tensor for fixed
 * target index k3: entry (k1, k2) is the coordinate of the monomial with
 * context pair {k1, k2} and target index k3. On the variety each slice
 * equals (v a_{k3}^T + a_{k3} v^T)/2, so every pencil of slices has rank
 * at most 2.
 */
inline std::vector<PolyMatrix> slice_matrices(int d, int n, int j, int row = 1) {
  detail::require_context(n, j);
  std::vector<PolyMatrix> out;
  for (int k3 = 1; k3 <= d; ++k3) {
    PolyMatrix m(d, d);
    for (int k1 = 1; k1 <= d; ++k1)
      for (int k2 = 1; k2 <= d; ++k2)
        m.at(k1 - 1, k2 - 1) = detail::ycross(row, k1, k2, k3, n, j);
    out.push_back(std::move(m));
  }
  return out;
}

// Sorted multisets of slice indices and the mixed minor they index:
//   Delta_{R,C}^S = sum over distinct orderings (t1,t2,t3) of S of
//   det(T[(r_p, c_q, t_p)]).
inline MultiPoly mixed_minor(const std::vector<int>& R, const std::vector<int>& C,
                             const std::vector<int>& S, int n, int j, int row = 1) {
  MultiPoly acc;
  detail::for_each_permutation(S, [&](const std::vector<int>& t) {
    PolyMatrix m(3, 3);
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) m.at(p, q) = detail::ycross(row, R[p], C[q], t[p], n, j);
    acc += det_poly(m);
  });
  return acc;
}

/*
 * Rank-two pencil invariants: for every row set R, column set C and slice
 * multiset S, the mixed minor Delta_{R,C}^S vanishes on the variety. These
 * are exactly the coefficients of det(sum_k lam_k M^(k)) restricted to
 * (R, C), expanded in the lam monomial basis; the lam-expansion route is
 * provided separately so the two constructions can be checked against each
 * other. Enumeration order: lexicographic in (R, C, S).
 */
inline InvariantSet pencil_mixed_minors(int d, int n, int j, int row = 1) {
  if (d < 3) throw DimensionTooSmallError("pencil_mixed_minors: requires d >= 3");
  detail::require_context(n, j);
  InvariantSet set(Family::PencilMixedMinors, Shape(d, std::max(n, j), d, row));
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
  auto subsets = multisets(d, 3);  // reused for S; R and C need distinct entries
  std::vector<std::vector<int>> triples;
  for (const auto& s : subsets)
    if (s[0] < s[1] && s[1] < s[2]) triples.push_back(s);
  for (const auto& R : triples)
    for (const auto& C : triples)
      for (const auto& S : subsets) set.polys.push_back(mixed_minor(R, C, S, n, j, row));
  return set;
}

// The lam-expansion route: coefficients of the 3x3 minors of the pencil
// sum_k lam[k] M^(k), in the same (R, C, S) order as pencil_mixed_minors.
inline std::vector<MultiPoly> pencil_coefficients_via_lambda(int d, int n, int j, int row = 1) {
  if (d < 3) throw DimensionTooSmallError("pencil_coefficients_via_lambda: requires d >= 3");
  detail::require_context(n, j);
  auto slices = slice_matrices(d, n, j, row);
  PolyMatrix pencil(d, d);
  for (int k = 0; k < d; ++k)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        pencil.at(r, c) += slices[k].at(r, c) * MultiPoly::var(VarId::aux_lambda(k + 1));
  auto subsets = multisets(d, 3);
  std::vector<std::vector<int>> triples;
  for (const auto& s : subsets)
    if (s[0] < s[1] && s[1] < s[2]) triples.push_back(s);
  std::vector<MultiPoly> out;
  for (const auto& R : triples)
    for (const auto& C : triples) {
      std::vector<size_t> rs, cs;
      for (int r : R) rs.push_back(size_t(r - 1));
      for (int c : C) cs.push_back(size_t(c - 1));
      MultiPoly det = det_poly(pencil.submatrix(rs, cs));
      auto groups = det.split_by([](VarId v) { return v.cls() == VarClass::AuxLambda; });
      for (const auto& S : subsets) {
        Monomial key;
        std::map<VarId, uint32_t> exps;
        for (int s : S) exps[VarId::aux_lambda(s)] += 1;
        for (const auto& [v, e] : exps) key.push_factor_unchecked(v, e);
        auto it = groups.find(key);
        out.push_back(it == groups.end() ? MultiPoly() : it->second);
      }
    }
  return out;
}

/*
 * Unbalanced flattening F_{n,j}: binom(d+1,2) x d, rows indexed by sorted
 * context pairs in lexicographic order, columns by the target index. On the
 * variety it factors as Phi(v) A, so rank(F) <= rank(A).
 */
inline PolyMatrix unbalanced_flattening(int d, int n, int j, int row = 1) {
  detail::require_context(n, j);
  auto pairs = multisets(d, 2);
  PolyMatrix m(pairs.size(), d);
  for (size_t r = 0; r < pairs.size(); ++r)
    for (int k3 = 1; k3 <= d; ++k3)
      m.at(r, k3 - 1) = detail::ycross(row, pairs[r][0], pairs[r][1], k3, n, j);
  return m;
}

// All (a+1) x (a+1) minors of the unbalanced flattening; the attention-rank
// constraints in the bottlenecked regime a < d.
inline InvariantSet low_rank_minors(int d, int a, int n, int j, int row = 1) {
  if (a >= d)
    throw NotBottleneckedError("low_rank_minors: requires attention dimension a < d");
  detail::require_context(n, j);
  InvariantSet set(Family::LowRankMinors, Shape(d, std::max(n, j), a, row));
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
  set.polys = all_minors(unbalanced_flattening(d, n, j, row), size_t(a) + 1);
  return set;
}

/*
 * Phi(v): binom(d+1,2) x d, linear in the value-row variables. The row of
 * the context pair {k1, k2} carries v_{k2}/omega at column k1 and
 * v_{k1}/omega at column k2, collapsing to a single entry v_{k1} when
 * k1 = k2. F_{n,j} evaluated on the variety equals Phi(v) A.
 */
inline PolyMatrix phi_matrix(int d, int row = 1) {
  auto pairs = multisets(d, 2);
  PolyMatrix m(pairs.size(), d);
  for (size_t r = 0; r < pairs.size(); ++r) {
    int k1 = pairs[r][0], k2 = pairs[r][1];
    Rational w = detail::omega(k1, k2).inverse();
    if (k1 == k2) {
      m.at(r, k1 - 1) = MultiPoly::var(VarId::param_v(row, k1));
    } else {
      m.at(r, k1 - 1) = MultiPoly::var(VarId::param_v(row, k2)).times_scalar(w);
      m.at(r, k2 - 1) = MultiPoly::var(VarId::param_v(row, k1)).times_scalar(w);
    }
  }
  return m;
}

// Multi-indices of length r and total degree deg, lexicographically
// descending ((deg,0,...) first).
inline std::vector<std::vector<int>> multi_indices(int r, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (r == 0) return out;
  rec(0, deg);
  return out;
}

/*
 * Determinantal syzygies: linear relations among the maximal minors of
 * F_{n,j}, found exactly. The maximal minors of Phi(v) are expanded in the
 * degree-d monomial basis of the value variables; the kernel of that
 * coefficient matrix (reduced row-echelon pivot form) gives the relations,
 * and each kernel vector applied to the formal minors of F_{n,j} yields a
 * degree-d invariant. Intended regime is a >= d, but the construction
 * vanishes on the variety for every a.
 */
inline InvariantSet determinantal_syzygies(int d, int n, int j, int row = 1) {
  detail::require_context(n, j);
  PolyMatrix phi = phi_matrix(d, row);
  PolyMatrix flat = unbalanced_flattening(d, n, j, row);
  auto row_sets = index_subsets(phi.rows(), size_t(d));
  std::vector<size_t> all_cols;
  for (int c = 0; c < d; ++c) all_cols.push_back(size_t(c));

  // Full binom(2d-1, d)-dimensional basis of degree-d monomials in the
  // value variables, canonical (descending) order.
  std::map<Monomial, size_t, MonomialBefore> basis_index;
  {
    size_t idx = 0;
    for (const auto& alpha : multi_indices(d, d)) {
      Monomial m;
      for (int k = 0; k < d; ++k)
        if (alpha[k] > 0) m.push_factor_unchecked(VarId::param_v(row, k + 1), alpha[k]);
      basis_index.emplace(std::move(m), idx++);
    }
  }
  std::vector<MultiPoly> phi_minors;
  for (const auto& rs : row_sets) phi_minors.push_back(det_poly(phi.submatrix(rs, all_cols)));

  RatMatrix coeffs(basis_index.size(), phi_minors.size());
  for (size_t c = 0; c < phi_minors.size(); ++c)
    for (const auto& t : phi_minors[c].terms())
      coeffs.at(basis_index.at(t.m), c) = t.c;

  auto kernel = kernel_basis(coeffs);

  InvariantSet set(Family::DeterminantalSyzygies, Shape(d, std::max(n, j), d, row));
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
  set.params["kernel_dim"] = std::to_string(kernel.size());
  std::vector<MultiPoly> flat_minors;
  for (const auto& rs : row_sets) flat_minors.push_back(det_poly(flat.submatrix(rs, all_cols)));
  for (const auto& vec : kernel) {
    MultiPoly inv;
    for (size_t c = 0; c < vec.size(); ++c)
      if (!vec[c].is_zero()) inv += flat_minors[c].times_scalar(vec[c]);
    set.polys.push_back(std::move(inv));
  }
  return set;
}

/*
 * The multiplicity-realizing map f: [r] -> [r] with |f^-1(m)| = alpha_m and
 * no cycles of length greater than one. Deterministic: self-loops at every
 * m with alpha_m >= 1, then the remaining vertices (alpha_p = 0) in
 * increasing order are assigned to the remaining demand in increasing order.
 */
inline std::vector<int> veronese_fmap(const std::vector<int>& alpha) {
  int r = int(alpha.size());
  int total = 0;
  for (int a : alpha) total += a;
  if (total != r)
    throw DegreeMismatchError("veronese_fmap: degree of alpha must equal its length");
  std::vector<int> f(r, 0);
  std::vector<int> remaining;  // targets still owed, increasing
  for (int m = 0; m < r; ++m) {
    if (alpha[m] >= 1) f[m] = m + 1;
    for (int c = 1; c < alpha[m]; ++c) remaining.push_back(m + 1);
  }
  size_t next = 0;
  for (int p = 0; p < r; ++p)
    if (alpha[p] == 0) f[p] = remaining[next++];
  return f;
}

/*
 * Veronese matrix M_alpha: the p-th row takes the context pair
 * {k_{f(p)}, k_p}, the q-th column the target index l_q; entries are
 * unscaled by omega so determinants produce the classical Veronese
 * coordinates. Under the parametrization det(M_alpha) = v^alpha det(A_{K,L}).
 */
inline PolyMatrix veronese_matrix(const std::vector<int>& alpha, const std::vector<int>& K,
                                  const std::vector<int>& L, int d, int n, int j, int row = 1) {
  detail::require_context(n, j);
  int r = int(alpha.size());
  if (int(K.size()) != r || int(L.size()) != r)
    throw IndexOutOfRangeError("veronese_matrix: K and L must have length r");
  if (r < 2 || r > d) throw IndexOutOfRangeError("veronese_matrix: requires 2 <= r <= d");
  auto check_distinct = [&](const std::vector<int>& t) {
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 1 || t[i] > d) throw IndexOutOfRangeError("veronese_matrix: index out of [d]");
      for (size_t k = i + 1; k < t.size(); ++k)
        if (t[i] == t[k]) throw IndexOutOfRangeError("veronese_matrix: indices must be distinct");
    }
  };
  check_distinct(K);
  check_distinct(L);
  auto f = veronese_fmap(alpha);
  PolyMatrix m(r, r);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      int kf = K[f[p] - 1], kp = K[p];
      m.at(p, q) =
          detail::ycross(row, kf, kp, L[q], n, j).times_scalar(detail::omega(kf, kp));
    }
  return m;
}

inline MultiPoly veronese_determinant(const std::vector<int>& alpha, const std::vector<int>& K,
                                      const std::vector<int>& L, int d, int n, int j,
                                      int row = 1) {
  return det_poly(veronese_matrix(alpha, K, L, d, n, j, row));
}

namespace detail {

// D_alpha cache across the minor families.
class VeroneseCoordinates {
 public:
  VeroneseCoordinates(std::vector<int> K, int d, int n, int j, int row)
      : K_(std::move(K)), d_(d), n_(n), j_(j), row_(row) {}

  const MultiPoly& at(const std::vector<int>& alpha, const std::vector<int>& L) {
    auto key = std::make_pair(alpha, L);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_
        .emplace(key, veronese_determinant(alpha, K_, L, d_, n_, j_, row_))
        .first->second;
  }

 private:
  std::vector<int> K_;
  int d_, n_, j_, row_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, MultiPoly> cache_;
};

inline std::vector<int> add_indices(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> s(a.size());
  for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

inline void record_veronese_params(InvariantSet& set, int r, const std::vector<int>& K, int n,
                                   int j, int row) {
  set.params["r"] = std::to_string(r);
  set.params["K"] = tuple_str(K);
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
}

}  // namespace detail

/*
 * Catalecticant minors: rows indexed by degree-1 multi-indices beta, columns
 * by degree-(r-1) multi-indices gamma, entry D_{beta+gamma}; all 2x2 minors
 * vanish on the variety. Degree 2r in the coordinates.
 */
inline InvariantSet catalecticant_minors(int r, const std::vector<int>& K,
                                         const std::vector<int>& L, int d, int n, int j,
                                         int row = 1) {
  InvariantSet set(Family::Catalecticant, Shape(d, std::max(n, j), d, row));
  detail::record_veronese_params(set, r, K, n, j, row);
  set.params["L"] = detail::tuple_str(L);
  detail::VeroneseCoordinates D(K, d, n, j, row);
  auto betas = multi_indices(r, 1);
  auto gammas = multi_indices(r, r - 1);
  PolyMatrix cat(betas.size(), gammas.size());
  for (size_t b = 0; b < betas.size(); ++b)
    for (size_t g = 0; g < gammas.size(); ++g)
      cat.at(b, g) = D.at(detail::add_indices(betas[b], gammas[g]), L);
  set.polys = all_minors(cat, 2);
  return set;
}

/*
 * Cross-target minors: the two columns (D_{alpha,L})_alpha and
 * (D_{alpha,L'})_alpha are proportional on the variety, so all 2x2 minors
 * of the stacked matrix vanish.
 */
inline InvariantSet cross_target_minors(int r, const std::vector<int>& K,
                                        const std::vector<int>& L, const std::vector<int>& L2,
                                        int d, int n, int j, int row = 1) {
  if (L == L2)
    throw IndexOutOfRangeError("cross_target_minors: target tuples must differ");
  InvariantSet set(Family::CrossTarget, Shape(d, std::max(n, j), d, row));
  detail::record_veronese_params(set, r, K, n, j, row);
  set.params["L"] = detail::tuple_str(L);
  set.params["L2"] = detail::tuple_str(L2);
  detail::VeroneseCoordinates D(K, d, n, j, row);
  auto alphas = multi_indices(r, r);
  PolyMatrix m(alphas.size(), 2);
  for (size_t a = 0; a < alphas.size(); ++a) {
    m.at(a, 0) = D.at(alphas[a], L);
    m.at(a, 1) = D.at(alphas[a], L2);
  }
  set.polys = all_minors(m, 2);
  return set;
}

/*
 * Block Veronese minors: rows indexed by degree-1 beta, columns by pairs
 * (L, gamma) with L running over the given target tuples and gamma over
 * degree-(r-1) multi-indices; entry D_{beta+gamma, L}. The 2x2 minors
 * include the catalecticant family for each fixed L and the mixed
 * (gamma, L)/(gamma', L') minors.
 */
inline InvariantSet block_veronese_minors(int r, const std::vector<int>& K,
                                          const std::vector<std::vector<int>>& targets, int d,
                                          int n, int j, int row = 1) {
  if (targets.empty()) throw IndexOutOfRangeError("block_veronese_minors: no target tuples");
  InvariantSet set(Family::BlockVeronese, Shape(d, std::max(n, j), d, row));
  detail::record_veronese_params(set, r, K, n, j, row);
  std::string ts;
  for (size_t i = 0; i < targets.size(); ++i) {
    if (i) ts += ";";
    ts += detail::tuple_str(targets[i]);
  }
  set.params["L"] = ts;
  detail::VeroneseCoordinates D(K, d, n, j, row);
  auto betas = multi_indices(r, 1);
  auto gammas = multi_indices(r, r - 1);
  PolyMatrix m(betas.size(), targets.size() * gammas.size());
  for (size_t b = 0; b < betas.size(); ++b) {
    size_t c = 0;
    for (const auto& L : targets)
      for (const auto& gamma : gammas)
        m.at(b, c++) = D.at(detail::add_indices(betas[b], gamma), L);
  }
  set.polys = all_minors(m, 2);
  return set;
}

/*
 * Formal slice quadrics q_s(y; z) = sum_{p<=q} omega(p,q)
 * y_{(p,n),(q,n),(s,j)} z_p z_q. On the variety they factor as
 * (sum v_k z_k)(sum a_{ks} z_k) and share the first factor.
 */
inline std::vector<MultiPoly> slice_quadrics(int d, int n, int j, int row = 1) {
  detail::require_context(n, j);
  std::vector<MultiPoly> out;
  for (int s = 1; s <= d; ++s) {
    MultiPoly q;
    for (int p = 1; p <= d; ++p)
      for (int qq = p; qq <= d; ++qq) {
        Monomial zm = Monomial(VarId::input_z(p)) * Monomial(VarId::input_z(qq));
        q += detail::ycross(row, p, qq, s, n, j)
                 .times_term(zm, detail::omega(p, qq));
      }
    out.push_back(std::move(q));
  }
  return out;
}

// A line in the context projective space, spanned by two independent
// rational vectors.
struct Line {
  std::vector<Rational> xi, zeta;

  Line(std::vector<Rational> xi_, std::vector<Rational> zeta_)
      : xi(std::move(xi_)), zeta(std::move(zeta_)) {
    if (xi.size() != zeta.size() || xi.empty())
      throw DimensionMismatchError("Line: spanning vectors must have equal positive length");
    RatMatrix m(2, xi.size());
    for (size_t k = 0; k < xi.size(); ++k) {
      m.at(0, k) = xi[k];
      m.at(1, k) = zeta[k];
    }
    if (rank_rational(m) != 2)
      throw DependentLineVectorsError("Line: spanning vectors are linearly dependent");
  }

  static Line coordinate(int d, int p, int q) {
    std::vector<Rational> xi(d), zeta(d);
    xi[p - 1] = Rational(1);
    zeta[q - 1] = Rational(1);
    return Line(std::move(xi), std::move(zeta));
  }

  std::string str() const {
    auto vec = [](const std::vector<Rational>& v) {
      std::string s = "(";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
      }
      return s + ")";
    };
    return vec(xi) + "|" + vec(zeta);
  }
};

// All binom(d,2) coordinate lines span{e_p, e_q}, p < q lexicographic.
inline std::vector<Line> coordinate_lines(int d) {
  std::vector<Line> out;
  for (int p = 1; p <= d; ++p)
    for (int q = p + 1; q <= d; ++q) out.push_back(Line::coordinate(d, p, q));
  return out;
}

// Binary quadric A t1^2 + B t1 t2 + C t2^2 with polynomial coefficients.
struct BinaryQuadric {
  MultiPoly A, B, C;
};

// Restriction of a quadratic form in z_1..z_d to the line z = t1 xi + t2 zeta.
inline BinaryQuadric restrict_to_line(const MultiPoly& quadric, const Line& line) {
  std::map<VarId, MultiPoly> images;
  for (size_t k = 0; k < line.xi.size(); ++k) {
    MultiPoly img = MultiPoly::var(VarId::line_lambda(1)).times_scalar(line.xi[k]) +
                    MultiPoly::var(VarId::line_lambda(2)).times_scalar(line.zeta[k]);
    images[VarId::input_z(int(k + 1))] = std::move(img);
  }
  MultiPoly restricted = quadric.substitute(images);
  auto groups =
      restricted.split_by([](VarId v) { return v.cls() == VarClass::LineLambda; });
  auto pick = [&](uint32_t e1, uint32_t e2) {
    Monomial key;
    if (e1) key.push_factor_unchecked(VarId::line_lambda(1), e1);
    if (e2) key.push_factor_unchecked(VarId::line_lambda(2), e2);
    auto it = groups.find(key);
    return it == groups.end() ? MultiPoly() : it->second;
  };
  return BinaryQuadric{pick(2, 0), pick(1, 1), pick(0, 2)};
}

inline PolyMatrix sylvester_matrix(const BinaryQuadric& f, const BinaryQuadric& g) {
  PolyMatrix m(4, 4);
  m.at(0, 0) = f.A; m.at(0, 1) = f.B; m.at(0, 2) = f.C;
  m.at(1, 1) = f.A; m.at(1, 2) = f.B; m.at(1, 3) = f.C;
  m.at(2, 0) = g.A; m.at(2, 1) = g.B; m.at(2, 2) = g.C;
  m.at(3, 1) = g.A; m.at(3, 2) = g.B; m.at(3, 3) = g.C;
  return m;
}

// Resultant of two binary quadrics: the 4x4 Sylvester determinant, zero iff
// the quadrics share a root.
inline MultiPoly sylvester_resultant(const BinaryQuadric& f, const BinaryQuadric& g) {
  return det_poly(sylvester_matrix(f, g));
}

enum class ResultantMode { Pairwise, Pencil };

/*
 * Quartic invariants from Sylvester resultants of the restricted slice
 * quadrics. Pairwise mode: Res(q_r^L, q_s^L) over slice pairs r < s for each
 * line. Pencil mode: coefficients of Res(Q_u^L, Q_w^L) in the u, w monomial
 * basis, by default only the mixed monomials u_r^2 w_s w_t and
 * u_r u_s w_t^2 with distinct indices (the monomials of the worked d=3
 * computation); emit_all_coefficients switches to the full expansion.
 */
inline InvariantSet resultant_quartics(int d, int n, int j, const std::vector<Line>& lines,
                                       ResultantMode mode, int row = 1,
                                       bool emit_all_coefficients = false) {
  detail::require_context(n, j);
  InvariantSet set(Family::ResultantQuartics, Shape(d, std::max(n, j), d, row));
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
  set.params["mode"] = mode == ResultantMode::Pairwise ? "pairwise" : "pencil";
  {
    std::string ls;
    for (size_t i = 0; i < lines.size(); ++i) {
      if (i) ls += ";";
      ls += lines[i].str();
    }
    set.params["lines"] = ls;
  }

  auto quadrics = slice_quadrics(d, n, j, row);
  for (const auto& line : lines) {
    std::vector<BinaryQuadric> restricted;
    for (const auto& q : quadrics) restricted.push_back(restrict_to_line(q, line));

    if (mode == ResultantMode::Pairwise) {
      for (int r = 0; r < d; ++r)
        for (int s = r + 1; s < d; ++s)
          set.polys.push_back(sylvester_resultant(restricted[r], restricted[s]));
      continue;
    }

    // Pencil mode: Q_u = sum u_s q_s^L, Q_w = sum w_s q_s^L.
    BinaryQuadric Qu, Qw;
    for (int s = 0; s < d; ++s) {
      MultiPoly us = MultiPoly::var(VarId::aux_u(s + 1));
      MultiPoly ws = MultiPoly::var(VarId::aux_w(s + 1));
      Qu.A += restricted[s].A * us;
      Qu.B += restricted[s].B * us;
      Qu.C += restricted[s].C * us;
      Qw.A += restricted[s].A * ws;
      Qw.B += restricted[s].B * ws;
      Qw.C += restricted[s].C * ws;
    }
    MultiPoly res = sylvester_resultant(Qu, Qw);
    auto groups = res.split_by(
        [](VarId v) { return v.cls() == VarClass::AuxU || v.cls() == VarClass::AuxW; });
    auto coefficient_of = [&](const Monomial& key) {
      auto it = groups.find(key);
      return it == groups.end() ? MultiPoly() : it->second;
    };
    if (emit_all_coefficients) {
      for (const auto& [key, poly] : groups) set.polys.push_back(poly);
    } else {
      auto mono = [&](std::vector<std::pair<VarId, uint32_t>> fs) {
        std::sort(fs.begin(), fs.end());
        Monomial m;
        for (const auto& [v, e] : fs) m.push_factor_unchecked(v, e);
        return m;
      };
      // u_r^2 w_s w_t with r, s, t distinct and s < t
      for (int r = 1; r <= d; ++r)
        for (int s = 1; s <= d; ++s)
          for (int t = s + 1; t <= d; ++t) {
            if (r == s || r == t) continue;
            set.polys.push_back(coefficient_of(mono(
                {{VarId::aux_u(r), 2}, {VarId::aux_w(s), 1}, {VarId::aux_w(t), 1}})));
          }
      // u_r u_s w_t^2 with r < s and t distinct from both
      for (int r = 1; r <= d; ++r)
        for (int s = r + 1; s <= d; ++s)
          for (int t = 1; t <= d; ++t) {
            if (t == r || t == s) continue;
            set.polys.push_back(coefficient_of(
                mono({{VarId::aux_u(r), 1}, {VarId::aux_u(s), 1}, {VarId::aux_w(t), 2}})));
          }
    }
  }
  return set;
}

}  // namespace attninv
