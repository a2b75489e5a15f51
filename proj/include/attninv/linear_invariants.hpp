#pragma once

#include <vector>

#include "attninv/invariant_set.hpp"
#include "attninv/model.hpp"

namespace attninv {

namespace detail {

// Linear relations are normalized so the canonically-leading variable has
// positive coefficient; they are integer by construction.
inline MultiPoly normalize_linear(MultiPoly p) {
  if (!p.is_zero() && p.leading_term().c.sign() < 0) p = -p;
  return p;
}

inline MultiPoly yvar(const MonomialLabel& l) { return MultiPoly::var(VarId::coeff_y(l)); }

}  // namespace detail

/*
 * Sequence-copy relations: the value of a single-column coordinate depends
 * only on the multiset K, and the value of a cross-column coordinate only on
 * (A, b), so varying the column indices copies coefficients. Deduplicated by
 * a spanning tree: every single-column coordinate is related to its j = 1
 * representative and every cross-column coordinate to its (n, j) = (2, 1)
 * representative. Empty for t = 1.
 */
inline InvariantSet sequence_copy_relations(const Shape& s, int row = 1) {
  InvariantSet set(Family::SequenceCopy, s);
  set.params["row"] = std::to_string(row);
  if (s.t < 2) return set;
  for (const auto& K : multisets(s.d, 3)) {
    auto rep = MonomialLabel::single(row, {K[0], K[1], K[2]}, 1);
    for (int j = 2; j <= s.t; ++j)
      set.polys.push_back(detail::normalize_linear(
          detail::yvar(rep) - detail::yvar(MonomialLabel::single(row, {K[0], K[1], K[2]}, j))));
  }
  for (const auto& A : multisets(s.d, 2))
    for (int b = 1; b <= s.d; ++b) {
      auto rep = MonomialLabel::cross(row, {A[0], A[1]}, b, 2, 1);
      for (int n = 1; n <= s.t; ++n)
        for (int j = 1; j <= s.t; ++j) {
          if (n == j || (n == 2 && j == 1)) continue;
          set.polys.push_back(detail::normalize_linear(
              detail::yvar(rep) - detail::yvar(MonomialLabel::cross(row, {A[0], A[1]}, b, n, j))));
        }
    }
  return set;
}

/*
 * Internal symmetrization relations within the output coordinate (row, j):
 *   |Perm K| y_j(K) - sum over decompositions K = A + {b} of |Perm A| y_{n,j}(A, b),
 * one relation per multiset K, listed in lexicographically descending K order
 * (the order of the worked examples). There are binom(d+2, 3) relations and
 * they are linearly independent, since each single-column variable appears in
 * exactly one of them.
 */
inline InvariantSet symmetrization_relations(const Shape& s, int row, int j, int n) {
  if (n == j)
    throw ContextEqualsTargetError("symmetrization_relations: context column equals target");
  if (j < 1 || j > s.t || n < 1 || n > s.t)
    throw DimensionMismatchError("symmetrization_relations: column index out of range");
  InvariantSet set(Family::Symmetrization, s);
  set.params["row"] = std::to_string(row);
  set.params["j"] = std::to_string(j);
  set.params["n"] = std::to_string(n);
  auto Ks = multisets(s.d, 3);
  for (auto it = Ks.rbegin(); it != Ks.rend(); ++it) {
    const auto& K = *it;
    MultiPoly rel = detail::yvar(MonomialLabel::single(row, {K[0], K[1], K[2]}, j))
                        .times_scalar(Rational(perm_orbit_size(K)));
    // Distinct decompositions: pick each distinct value of K as the target b.
    for (size_t pos = 0; pos < K.size(); ++pos) {
      if (pos > 0 && K[pos] == K[pos - 1]) continue;
      int b = K[pos];
      std::vector<int> A;
      bool removed = false;
      for (int x : K) {
        if (!removed && x == b) {
          removed = true;
          continue;
        }
        A.push_back(x);
      }
      rel -= detail::yvar(MonomialLabel::cross(row, {A[0], A[1]}, b, n, j))
                 .times_scalar(Rational(perm_orbit_size(A)));
    }
    set.polys.push_back(detail::normalize_linear(std::move(rel)));
  }
  return set;
}

}  // namespace attninv
