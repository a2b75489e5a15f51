#pragma once

#include <vector>

#include "attninv/invariant_set.hpp"
#include "attninv/model.hpp"

namespace attninv {

// Default selection: every label of output column j = 1 (row field is a
// placeholder; cross_row_matrix re-rows the selection).
inline std::vector<MonomialLabel> default_cross_row_selection(const Shape& s) {
  std::vector<MonomialLabel> out;
  for (const auto& l : enumerate_labels(Shape(s.d, s.t, s.a, 1)))
    if (l.j == 1) out.push_back(l);
  return out;
}

inline MonomialLabel with_row(const MonomialLabel& l, int row) {
  if (l.is_cross())
    return MonomialLabel::cross(row, {l.k[0], l.k[1]}, l.k[2], l.n, l.j);
  return MonomialLabel::single(row, {l.k[0], l.k[1], l.k[2]}, l.j);
}

/*
 * C_S: the d' x |S| matrix whose (i, s) entry is the coordinate of label s
 * taken in output row i. Under the parametrization it factors as V M_S(A)
 * with M_S depending only on A, so its rank is at most d.
 */
inline PolyMatrix cross_row_matrix(const Shape& s, const std::vector<MonomialLabel>& selection) {
  PolyMatrix m(s.d_prime, selection.size());
  for (int i = 1; i <= s.d_prime; ++i)
    for (size_t c = 0; c < selection.size(); ++c)
      m.at(i - 1, c) = MultiPoly::var(VarId::coeff_y(with_row(selection[c], i)));
  return m;
}

// M_S(A): d x |S|, the v-coefficients of the scaled coefficient formulas;
// column s holds the (row-independent) coefficient of v_p in label s.
inline PolyMatrix cross_row_factor_matrix(const Shape& s,
                                          const std::vector<MonomialLabel>& selection) {
  PolyMatrix m(s.d, selection.size());
  for (size_t c = 0; c < selection.size(); ++c) {
    MultiPoly coeff = symbolic_coefficient(with_row(selection[c], 1));
    for (const auto& t : coeff.terms()) {
      // each term is a[m,l] * v[1,p]
      VarId avar = t.m.factors()[0].first;
      VarId vvar = t.m.factors()[1].first;
      int p = vvar.idx1();
      m.at(p - 1, c) += MultiPoly::term(Monomial(avar), t.c);
    }
  }
  return m;
}

/*
 * Cross-row determinantal invariants: all (d+1) x (d+1) minors of the
 * symbolic C_S. Empty (not an error) unless d' >= d+1 and |S| >= d+1,
 * where the rank bound has content.
 */
inline InvariantSet cross_row_minors(const Shape& s, std::vector<MonomialLabel> selection = {}) {
  if (selection.empty()) selection = default_cross_row_selection(s);
  InvariantSet set(Family::CrossRowMinors, s);
  set.params["selection_size"] = std::to_string(selection.size());
  if (s.d_prime < s.d + 1 || int(selection.size()) < s.d + 1) return set;
  set.polys = all_minors(cross_row_matrix(s, selection), size_t(s.d) + 1);
  return set;
}

}  // namespace attninv
