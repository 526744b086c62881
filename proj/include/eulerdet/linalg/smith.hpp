#pragma once

#include <type_traits>
#include <vector>

#include "eulerdet/linalg/matrix.hpp"
#include "eulerdet/rings/integer.hpp"

namespace eulerdet {

template <class R>
struct SmithForm {
  Matrix<R> U;  // invertible, rows x rows
  Matrix<R> D;  // diagonal, d_i | d_{i+1}
  Matrix<R> V;  // invertible, cols x cols
  Matrix<R> U_inv;
  Matrix<R> V_inv;
};

namespace detail {

template <class R>
void swap_rows(Matrix<R>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

template <class R>
void swap_cols(Matrix<R>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= f * row_src
template <class R>
void row_axpy(Matrix<R>& m, std::size_t dst, std::size_t src, const R& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = m(dst, j) - f * m(src, j);
}

template <class R>
void col_axpy(Matrix<R>& m, std::size_t dst, std::size_t src, const R& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = m(i, dst) - f * m(i, src);
}

template <class R>
void scale_col(Matrix<R>& m, std::size_t c, const R& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = m(i, c) * f;
}

template <class R>
void scale_row(Matrix<R>& m, std::size_t r, const R& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f * m(r, j);
}

inline SmithForm<Integer> smith_euclidean(const Matrix<Integer>& m) {
  using T = ring_traits<Integer>;
  const auto& ctx = m.context();
  Matrix<Integer> U = Matrix<Integer>::identity(ctx, m.rows());
  Matrix<Integer> V = Matrix<Integer>::identity(ctx, m.cols());
  Matrix<Integer> D = m;
  Matrix<Integer> Ui = U;
  Matrix<Integer> Vi = V;
  const std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      // Smallest nonzero absolute value, ties by lowest (row, col).
      std::size_t pr = D.rows(), pc = D.cols();
      for (std::size_t i = k; i < D.rows(); ++i) {
        for (std::size_t j = k; j < D.cols(); ++j) {
          if (T::is_zero(D(i, j))) continue;
          if (pr == D.rows() || abs(D(i, j)) < abs(D(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == D.rows()) break;
      swap_rows(D, k, pr);
      swap_rows(U, k, pr);
      swap_cols(Ui, k, pr);
      swap_cols(D, k, pc);
      swap_cols(V, k, pc);
      swap_rows(Vi, k, pc);
      bool clean = true;
      for (std::size_t i = k + 1; i < D.rows(); ++i) {
        if (D(i, k).is_zero()) continue;
        Integer q = trunc_div(D(i, k), D(k, k));
        row_axpy(D, i, k, q);
        row_axpy(U, i, k, q);
        col_axpy(Ui, k, i, -q);
        if (!D(i, k).is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < D.cols(); ++j) {
        if (D(k, j).is_zero()) continue;
        Integer q = trunc_div(D(k, j), D(k, k));
        col_axpy(D, j, k, q);
        col_axpy(V, j, k, q);
        row_axpy(Vi, k, j, -q);
        if (!D(k, j).is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = k + 1; i < D.rows() && divisible; ++i) {
        for (std::size_t j = k + 1; j < D.cols(); ++j) {
          if (!divides(D(k, k), D(i, j))) {
            // Pull the offending row into the pivot row and reduce again.
            row_axpy(D, k, i, Integer(-1));
            row_axpy(U, k, i, Integer(-1));
            col_axpy(Ui, i, k, Integer(1));
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (D(k, k).sign() < 0) {
      scale_row(D, k, Integer(-1));
      scale_row(U, k, Integer(-1));
      scale_col(Ui, k, Integer(-1));
    }
  }
  return {std::move(U), std::move(D), std::move(V), std::move(Ui), std::move(Vi)};
}

// Local rings: the pivot is an entry of minimal valuation, ties broken by
// lowest (row, col); it then divides everything left in the block.
template <class R>
SmithForm<R> smith_local(const Matrix<R>& m) {
  using T = ring_traits<R>;
  const auto& ctx = m.context();
  Matrix<R> U = Matrix<R>::identity(ctx, m.rows());
  Matrix<R> V = Matrix<R>::identity(ctx, m.cols());
  Matrix<R> D = m;
  Matrix<R> Ui = U;
  Matrix<R> Vi = V;
  const std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t k = 0; k < steps; ++k) {
    int vmin = kInfiniteValuation;
    for (std::size_t i = k; i < D.rows(); ++i)
      for (std::size_t j = k; j < D.cols(); ++j) vmin = std::min(vmin, T::content_valuation(D(i, j)));
    if (vmin == kInfiniteValuation) break;
    std::size_t pr = D.rows(), pc = D.cols();
    for (std::size_t i = k; i < D.rows() && pr == D.rows(); ++i) {
      for (std::size_t j = k; j < D.cols(); ++j) {
        if (T::content_valuation(D(i, j)) == vmin && T::is_pivot(D(i, j))) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == D.rows()) {
      throw Error(ErrorCode::UnsupportedRing,
                  "no entry of minimal valuation generates the ideal of the block over " + T::name(ctx));
    }
    swap_rows(D, k, pr);
    swap_rows(U, k, pr);
    swap_cols(Ui, k, pr);
    swap_cols(D, k, pc);
    swap_cols(V, k, pc);
    swap_rows(Vi, k, pc);
    R unit = T::unit_part(D(k, k));
    R inv = T::inverse(unit);
    scale_row(D, k, inv);
    scale_row(U, k, inv);
    scale_col(Ui, k, unit);
    for (std::size_t i = k + 1; i < D.rows(); ++i) {
      if (T::is_zero(D(i, k))) continue;
      R f = T::exact_quotient(D(i, k), D(k, k));
      row_axpy(D, i, k, f);
      row_axpy(U, i, k, f);
      col_axpy(Ui, k, i, -f);
    }
    for (std::size_t j = k + 1; j < D.cols(); ++j) {
      if (T::is_zero(D(k, j))) continue;
      R f = T::exact_quotient(D(k, j), D(k, k));
      col_axpy(D, j, k, f);
      col_axpy(V, j, k, f);
      row_axpy(Vi, k, j, -f);
    }
  }
  return {std::move(U), std::move(D), std::move(V), std::move(Ui), std::move(Vi)};
}

}  // namespace detail

// U * m * V = D with D diagonal and each diagonal entry dividing the next.
template <class R>
SmithForm<R> smith_normal_form(const Matrix<R>& m) {
  if constexpr (std::is_same_v<R, Integer>) {
    return detail::smith_euclidean(m);
  } else if constexpr (ring_traits<R>::snf_kind == SnfKind::Local) {
    return detail::smith_local(m);
  } else {
    throw Error(ErrorCode::UnsupportedRing, "Smith normal form over " + ring_traits<R>::name(m.context()));
  }
}

template <class R>
std::vector<R> invariant_factors(const Matrix<R>& m) {
  auto s = smith_normal_form(m);
  std::vector<R> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(s.D(i, i));
  return d;
}

}  // namespace eulerdet
