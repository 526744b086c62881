#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/errors.hpp"
#include "eulerdet/rings/ring_traits.hpp"

namespace eulerdet {

// Dense row-major matrix over a coefficient ring. The ring context is kept
// so that empty and zero matrices still know their ring.
template <class R>
class Matrix {
 public:
  using value_type = R;
  using context_type = ring_context_t<R>;

  Matrix(context_type ctx, std::size_t rows, std::size_t cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(rows * cols, ring_traits<R>::zero(ctx_)) {}
  Matrix(context_type ctx, std::size_t rows, std::size_t cols, std::vector<R> entries)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw Error(ErrorCode::ShapeMismatch, "entry count does not match shape");
  }

  static Matrix identity(const context_type& ctx, std::size_t n) {
    Matrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring_traits<R>::one(ctx);
    return m;
  }
  static Matrix from_rows(const context_type& ctx, const std::vector<std::vector<R>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    std::vector<R> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
      e.insert(e.end(), row.begin(), row.end());
    }
    return Matrix(ctx, r, c, std::move(e));
  }
  static Matrix from_ints(const context_type& ctx, std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<R>> v;
    for (const auto& row : rows) {
      std::vector<R> r;
      for (long x : row) r.push_back(ring_traits<R>::from_int(ctx, x));
      v.push_back(std::move(r));
    }
    if (v.empty()) return Matrix(ctx, 0, 0);
    return from_rows(ctx, v);
  }
  static Matrix diagonal(const context_type& ctx, const std::vector<R>& d) {
    Matrix m(ctx, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  const context_type& context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<R>& entries() const { return e_; }

  R& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : e_) {
      if (!ring_traits<R>::is_zero(x)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "submatrix out of range");
    Matrix s(ctx_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
  }
  Matrix column(std::size_t j) const { return submatrix(0, j, rows_, 1); }
  Matrix select_columns(const std::vector<std::size_t>& cols) const {
    Matrix s(ctx_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) s(i, k) = (*this)(i, cols[k]);
    return s;
  }
  Matrix select_rows(const std::vector<std::size_t>& rows) const {
    Matrix s(ctx_, rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(rows[k], j);
    return s;
  }

  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.e_) x = -x;
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix m(a);
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix m(a);
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::ShapeMismatch, "product of " + a.shape() + " and " + b.shape());
    }
    Matrix m(a.ctx_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (ring_traits<R>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) = m(i, j) + aik * b(k, j);
      }
    }
    return m;
  }
  friend Matrix operator*(const R& s, const Matrix& a) {
    Matrix m(a);
    for (auto& x : m.e_) x = s * x;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.e_.size(); ++k) {
      if (!(a.e_[k] == b.e_[k])) return false;
    }
    return true;
  }

  template <class S, class F>
  Matrix<S> map(const ring_context_t<S>& target, F&& f) const {
    std::vector<S> v;
    v.reserve(e_.size());
    for (const auto& x : e_) v.push_back(f(x));
    return Matrix<S>(target, rows_, cols_, std::move(v));
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::ShapeMismatch, shape() + " vs " + b.shape());
  }

  context_type ctx_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> e_;
};

template <class R>
Matrix<R> hstack(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "hstack of " + a.shape() + " and " + b.shape());
  Matrix<R> m(a.context(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <class R>
Matrix<R> vstack(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "vstack of " + a.shape() + " and " + b.shape());
  Matrix<R> m(a.context(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

template <class R>
Matrix<R> block_diagonal(const std::vector<Matrix<R>>& blocks, const ring_context_t<R>& ctx) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix<R> m(ctx, r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

template <class R>
void set_block(Matrix<R>& dst, std::size_t r0, std::size_t c0, const Matrix<R>& src) {
  if (r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "block does not fit");
  }
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
}

template <class R>
Matrix<R> matrix_pow(const Matrix<R>& m, unsigned e) {
  Matrix<R> acc = Matrix<R>::identity(m.context(), m.rows());
  for (unsigned i = 0; i < e; ++i) acc = acc * m;
  return acc;
}

}  // namespace eulerdet
