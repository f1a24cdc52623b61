#pragma once

// Dense exact linear algebra over a field (Scalar or Rational).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qchev/errors.hpp"
#include "qchev/scalar.hpp"

namespace qchev {

namespace field {
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x == 0; }
inline std::size_t cost(const Scalar& x) { return x.cost(); }
inline std::size_t cost(const Rational& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}
}  // namespace field

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const T& x : data_)
      if (!field::is_zero(x)) return false;
    return true;
  }

  std::vector<T> row(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field::is_zero(v[c])) continue;
      for (std::size_t r = 0; r < rows_; ++r)
        if (!field::is_zero((*this)(r, c))) out[r] += (*this)(r, c) * v[c];
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(r, k);
        if (field::is_zero(x)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c)
          if (!field::is_zero(b(k, c))) out(r, c) += x * b(k, c);
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (T& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Rows stacked below each other (column counts must match).
  static Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) rows += p.rows();
    Matrix out(rows, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
      if (p.cols() != cols) throw DomainError("vstack column mismatch");
      for (std::size_t r = 0; r < p.rows(); ++r, ++at)
        for (std::size_t c = 0; c < cols; ++c) out(at, c) = p(r, c);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using SMatrix = Matrix<Scalar>;
using SVector = std::vector<Scalar>;
using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

template <class T>
struct Echelon {
  Matrix<T> rref;                    // reduced row echelon form (nonzero rows only)
  std::vector<std::size_t> pivots;   // pivot column per row
};

/// Reduced row echelon form; pivots normalized to 1. The result is canonical
/// (independent of pivot row choice), only zero rows are dropped.
template <class T>
Echelon<T> rref(Matrix<T> m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t best = R;
    std::size_t best_cost = 0;
    for (std::size_t k = r; k < R; ++k) {
      if (field::is_zero(m(k, c))) continue;
      const std::size_t cst = field::cost(m(k, c));
      if (best == R || cst < best_cost) {
        best = k;
        best_cost = cst;
      }
    }
    if (best == R) continue;
    if (best != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(r, j), m(best, j));
    const T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < C; ++j)
      if (!field::is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    for (std::size_t k = 0; k < R; ++k) {
      if (k == r || field::is_zero(m(k, c))) continue;
      const T f = m(k, c);
      for (std::size_t j = c; j < C; ++j)
        if (!field::is_zero(m(r, j))) m(k, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<T> out(r, C);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = std::move(m(i, j));
  return {std::move(out), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// Basis of the right kernel, returned as the rows of its canonical RREF.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
  const std::size_t C = m.cols();
  Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(C, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  // The vectors built from free columns are already in reduced echelon form
  // when read with the free column as leading entry, up to ordering: the
  // standard construction x_f = e_f - sum_r rref(r,f) e_{pivot r}. The
  // canonical RREF of the kernel is obtained by row reducing these.
  Matrix<T> raw(C - e.pivots.size(), C);
  std::size_t k = 0;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    raw(k, f) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (!field::is_zero(e.rref(r, f))) raw(k, e.pivots[r]) = -e.rref(r, f);
    ++k;
  }
  Echelon<T> ker = rref(raw);
  std::vector<std::vector<T>> out;
  for (std::size_t r = 0; r < ker.rref.rows(); ++r) out.push_back(ker.rref.row(r));
  return out;
}

/// Some solution x of m x = b, or nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  const std::size_t R = m.rows(), C = m.cols();
  if (b.size() != R) throw DomainError("solve: rhs size mismatch");
  Matrix<T> aug(R, C + 1);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) aug(r, c) = m(r, c);
    aug(r, C) = b[r];
  }
  Echelon<T> e = rref(aug);
  std::vector<T> x(C, T(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == C) return std::nullopt;
    x[e.pivots[r]] = e.rref(r, C);
  }
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("inverse of non-square matrix");
  Matrix<T> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = T(1);
  }
  Echelon<T> e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw PoleError("singular matrix");
  Matrix<T> out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = e.rref(r, n + c);
  return out;
}

/// Matrix whose columns are the given vectors.
template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
  Matrix<T> m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DomainError("from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

template <class T>
bool is_zero_vector(const std::vector<T>& v) {
  for (const T& x : v)
    if (!field::is_zero(x)) return false;
  return true;
}

}  // namespace qchev
