#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eulerdet/linalg/matrix.hpp"
#include "eulerdet/rings/polynomial.hpp"

namespace eulerdet {

// det(X*I - m) by Berkowitz's algorithm. Uses only ring operations, so it
// serves Z/p^n and truncated power series coefficients as well as fields.
template <class R>
Polynomial<R> char_poly(const Matrix<R>& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "characteristic polynomial of " + m.shape());
  const auto& ctx = m.context();
  const std::size_t n = m.rows();
  const R zero = ring_traits<R>::zero(ctx);
  // v holds coefficients from the leading one downwards.
  std::vector<R> v{ring_traits<R>::one(ctx)};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading principal block A_r is r x r; S = column r above the diagonal,
    // Rw = row r left of the diagonal, a = m(r, r).
    std::vector<R> col(r + 2, zero);
    col[0] = ring_traits<R>::one(ctx);
    col[1] = -m(r, r);
    std::vector<R> w(r, zero);  // A_r^k S
    for (std::size_t i = 0; i < r; ++i) w[i] = m(i, r);
    for (std::size_t k = 0; k + 2 <= r + 1 && r > 0; ++k) {
      R dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + m(r, i) * w[i];
      col[k + 2] = -dot;
      if (k + 3 > r + 1) break;
      std::vector<R> nw(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nw[i] = nw[i] + m(i, j) * w[j];
      w = std::move(nw);
    }
    // v_{r+1} = Toeplitz(col) * v_r, a (r+2) x (r+1) lower-triangular product.
    std::vector<R> nv(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) nv[i] = nv[i] + col[i - j] * v[j];
    v = std::move(nv);
  }
  std::vector<R> low_first(v.rbegin(), v.rend());
  return Polynomial<R>(ctx, std::move(low_first));
}

// det(1 - X*m); constant coefficient 1 and degree at most dim m.
template <class R>
Polynomial<R> reversed_char_poly(const Matrix<R>& m) {
  return char_poly(m).reversed(m.rows());
}

template <class R>
R determinant(const Matrix<R>& m) {
  auto cp = char_poly(m);
  R c0 = cp.coefficient(0);
  return (m.rows() % 2 == 0) ? c0 : -c0;
}

template <class R>
void require_field(const Matrix<R>& m, const char* what) {
  if (!ring_traits<R>::is_field(m.context())) {
    throw Error(ErrorCode::UnsupportedRing, std::string(what) + " needs a field, got " + ring_traits<R>::name(m.context()));
  }
}

template <class R>
struct RowEchelon {
  Matrix<R> form;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form over a field.
template <class R>
RowEchelon<R> row_echelon(Matrix<R> m) {
  require_field(m, "row echelon form");
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = m.rows();
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (!ring_traits<R>::is_zero(m(i, col))) {
        piv = i;
        break;
      }
    }
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    R inv = ring_traits<R>::inverse(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || ring_traits<R>::is_zero(m(i, col))) continue;
      R f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class R>
std::size_t rank(const Matrix<R>& m) {
  return row_echelon(m).pivot_cols.size();
}

// Columns form a basis of the null space.
template <class R>
Matrix<R> kernel(const Matrix<R>& m) {
  auto ech = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<R> k(m.context(), m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = ring_traits<R>::one(m.context());
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) k(ech.pivot_cols[r], f) = -ech.form(r, free[f]);
  }
  return k;
}

// Basis of the column space, taken from the columns of m.
template <class R>
Matrix<R> column_space(const Matrix<R>& m) {
  return m.select_columns(row_echelon(m).pivot_cols);
}

// Some X with a * X = b, if one exists.
template <class R>
std::optional<Matrix<R>> solve(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "solve with " + a.shape() + " and " + b.shape());
  auto ech = row_echelon(hstack(a, b));
  std::size_t n = a.cols();
  for (auto c : ech.pivot_cols)
    if (c >= n) return std::nullopt;
  Matrix<R> x(a.context(), n, b.cols());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(ech.pivot_cols[r], j) = ech.form(r, n + j);
  return x;
}

template <class R>
Matrix<R> inverse(const Matrix<R>& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "inverse of " + m.shape());
  auto x = solve(m, Matrix<R>::identity(m.context(), m.rows()));
  if (!x || rank(m) != m.rows()) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
  return *x;
}

// --- Subspaces of K^n, represented by matrices whose columns span them. ---

template <class R>
Matrix<R> span_sum(const Matrix<R>& u, const Matrix<R>& w) {
  return column_space(hstack(u, w));
}

template <class R>
Matrix<R> span_intersection(const Matrix<R>& u, const Matrix<R>& w) {
  Matrix<R> ub = column_space(u);
  Matrix<R> wb = column_space(w);
  if (ub.cols() == 0 || wb.cols() == 0) return Matrix<R>(u.context(), u.rows(), 0);
  Matrix<R> k = kernel(hstack(ub, -wb));
  Matrix<R> coeff = k.submatrix(0, 0, ub.cols(), k.cols());
  return column_space(ub * coeff);
}

template <class R>
bool span_contains(const Matrix<R>& big, const Matrix<R>& small) {
  if (small.cols() == 0) return true;
  return rank(hstack(big, small)) == rank(big);
}

template <class R>
bool span_equal(const Matrix<R>& u, const Matrix<R>& w) {
  return span_contains(u, w) && span_contains(w, u);
}

// Columns of `full` that extend a basis of span(sub) to a basis of
// span(sub) + span(full), chosen greedily left to right.
template <class R>
Matrix<R> complement_columns(const Matrix<R>& sub, const Matrix<R>& full) {
  Matrix<R> acc = column_space(sub);
  std::vector<std::size_t> chosen;
  std::size_t r = acc.cols();
  for (std::size_t j = 0; j < full.cols(); ++j) {
    Matrix<R> trial = hstack(acc, full.column(j));
    std::size_t tr = rank(trial);
    if (tr > r) {
      acc = std::move(trial);
      r = tr;
      chosen.push_back(j);
    }
  }
  return full.select_columns(chosen);
}

}  // namespace eulerdet
