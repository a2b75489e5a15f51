#pragma once

#include <numeric>
#include <vector>

#include "attninv/multipoly.hpp"
#include "attninv/parallel.hpp"
#include "attninv/rational.hpp"

namespace attninv {

template <class T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
  Matrix(size_t rows, size_t cols, std::vector<T> entries)
      : r_(rows), c_(cols), e_(std::move(entries)) {
    if (e_.size() != r_ * c_)
      throw DimensionMismatchError("Matrix: entry count does not match rows*cols");
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  T& at(size_t i, size_t j) { return e_[i * c_ + j]; }
  const T& at(size_t i, size_t j) const { return e_[i * c_ + j]; }

  const std::vector<T>& entries() const { return e_; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    Matrix s(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) s.at(i, j) = at(rows[i], cols[j]);
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw DimensionMismatchError("Matrix: product shape mismatch");
    Matrix p(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const T& aik = a.at(i, k);
        for (size_t j = 0; j < b.c_; ++j) p.at(i, j) += aik * b.at(k, j);
      }
    return p;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_)
      throw DimensionMismatchError("Matrix: difference shape mismatch");
    Matrix d(a.r_, a.c_);
    for (size_t i = 0; i < a.e_.size(); ++i) d.e_[i] = a.e_[i] - b.e_[i];
    return d;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }

 private:
  size_t r_, c_;
  std::vector<T> e_;
};

using RatMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<MultiPoly>;

namespace detail {

inline bool entry_zero(const Rational& x) { return x.is_zero(); }
inline bool entry_zero(const MultiPoly& p) { return p.is_zero(); }

template <class T>
T exact_quot(const T& num, const T& den);
template <>
inline Rational exact_quot<Rational>(const Rational& num, const Rational& den) {
  return num / den;
}
template <>
inline MultiPoly exact_quot<MultiPoly>(const MultiPoly& num, const MultiPoly& den) {
  return exact_div(num, den);
}

// Fraction-free Bareiss elimination with row pivoting. Works over any
// integral domain where exact_quot divides evenly (Bareiss intermediates are
// minors of the input, so the divisions are exact). Returns the determinant.
template <class T>
T det_bareiss(Matrix<T> m) {
  const size_t n = m.rows();
  if (n == 0) return T(Rational(1));
  int sign = 1;
  T prev_pivot(Rational(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && entry_zero(m.at(piv, k))) ++piv;
    if (piv == n) return T();  // zero column: singular
    if (piv != k) {
      for (size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        T num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = exact_quot<T>(num, prev_pivot);
      }
      m.at(i, k) = T();
    }
    prev_pivot = m.at(k, k);
  }
  T det = m.at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

template <>
inline Rational det_bareiss<Rational>(Matrix<Rational> m) {
  const size_t n = m.rows();
  if (n == 0) return Rational(1);
  int sign = 1;
  Rational prev_pivot(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m.at(piv, k).is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      for (size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev_pivot;
      m.at(i, k) = Rational(0);
    }
    prev_pivot = m.at(k, k);
  }
  Rational det = m.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

// Cofactor expansion along rows with memoization over column subsets.
inline MultiPoly det_subset_memo(const PolyMatrix& m) {
  const size_t n = m.rows();
  if (n == 0) return MultiPoly::constant(Rational(1));
  // level k holds determinants of the top-k rows against every k-subset of
  // columns, indexed by subset bitmask.
  std::vector<MultiPoly> cur(1, MultiPoly::constant(Rational(1)));
  std::vector<uint32_t> cur_masks(1, 0);
  for (size_t k = 0; k < n; ++k) {
    std::vector<MultiPoly> next;
    std::vector<uint32_t> next_masks;
    std::unordered_map<uint32_t, size_t> where;
    for (size_t s = 0; s < cur_masks.size(); ++s) {
      uint32_t mask = cur_masks[s];
      if (cur[s].is_zero()) continue;
      for (size_t c = 0; c < n; ++c) {
        uint32_t bit = uint32_t(1) << c;
        if (mask & bit) continue;
        const MultiPoly& e = m.at(k, c);
        if (e.is_zero()) continue;
        // Inversions added by assigning column c to row k: earlier rows that
        // already took a larger column.
        int inv = __builtin_popcount(mask >> (c + 1));
        MultiPoly contrib = cur[s] * e;
        if (inv & 1) contrib = -contrib;
        uint32_t nm = mask | bit;
        auto it = where.find(nm);
        if (it == where.end()) {
          where.emplace(nm, next.size());
          next_masks.push_back(nm);
          next.push_back(std::move(contrib));
        } else {
          next[it->second] += contrib;
        }
      }
    }
    cur = std::move(next);
    cur_masks = std::move(next_masks);
    if (cur.empty()) return MultiPoly();
  }
  return cur.empty() ? MultiPoly() : std::move(cur[0]);
}

inline void subsets_lex(size_t n, size_t k, std::vector<std::vector<size_t>>& out) {
  std::vector<size_t> cur(k);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == k) {
      out.push_back(cur);
      return;
    }
    for (size_t v = start; v + (k - depth) <= n; ++v) {
      cur[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace detail

inline Rational det_rational(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquareError("det_rational: matrix is not square");
  return detail::det_bareiss<Rational>(m);
}

inline constexpr size_t kDefaultDetCap = 8;

// Exact symbolic determinant: cofactor expansion with column-subset
// memoization up to 4x4, fraction-free Bareiss with exact polynomial
// division above, capped to avoid runaway symbolic blowup.
inline MultiPoly det_poly(const PolyMatrix& m, size_t size_cap = kDefaultDetCap) {
  if (m.rows() != m.cols()) throw NonSquareError("det_poly: matrix is not square");
  if (m.rows() > size_cap)
    throw SizeCapExceededError("det_poly: size " + std::to_string(m.rows()) +
                               " exceeds cap " + std::to_string(size_cap));
  if (m.rows() <= 4) return detail::det_subset_memo(m);
  return detail::det_bareiss<MultiPoly>(m);
}

inline std::vector<std::vector<size_t>> index_subsets(size_t n, size_t k) {
  std::vector<std::vector<size_t>> out;
  detail::subsets_lex(n, k, out);
  return out;
}

// All size x size minors, enumerated in lexicographic order over
// (row subset, column subset). Minors are computed in parallel; the returned
// order is the lexicographic order regardless of scheduling. Each minor uses
// the division-free subset expansion, which beats Bareiss by an order of
// magnitude on the sparse symbolic matrices of the invariant families.
inline std::vector<MultiPoly> all_minors(const PolyMatrix& m, size_t size,
                                         size_t size_cap = kDefaultDetCap) {
  if (size > m.rows() || size > m.cols())
    throw SizeCapExceededError("all_minors: minor size exceeds matrix dimensions");
  if (size > size_cap)
    throw SizeCapExceededError("all_minors: size " + std::to_string(size) +
                               " exceeds cap " + std::to_string(size_cap));
  auto row_sets = index_subsets(m.rows(), size);
  auto col_sets = index_subsets(m.cols(), size);
  std::vector<MultiPoly> out(row_sets.size() * col_sets.size());
  parallel_for(out.size(), [&](size_t idx) {
    const auto& rs = row_sets[idx / col_sets.size()];
    const auto& cs = col_sets[idx % col_sets.size()];
    out[idx] = detail::det_subset_memo(m.submatrix(rs, cs));
  });
  return out;
}

namespace detail {

// Gauss-Jordan to reduced row echelon form over the rationals.
// Returns the pivot column of each pivot row.
inline std::vector<size_t> rref(RatMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t piv = row;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(piv, j));
    Rational inv = m.at(row, col).inverse();
    for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Rational f = m.at(i, col);
      for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline size_t rank_rational(RatMatrix m) { return detail::rref(m).size(); }

// Basis of the right null space in reduced row-echelon pivot form: one basis
// vector per free column (ascending), carrying 1 at its free column.
// Empty result iff the matrix has full column rank.
inline std::vector<std::vector<Rational>> kernel_basis(RatMatrix m) {
  const size_t cols = m.cols();
  std::vector<size_t> pivots = detail::rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace attninv
