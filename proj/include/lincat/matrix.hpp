#ifndef LINCAT_MATRIX_HPP
#define LINCAT_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/scalar.hpp"

namespace lincat {

using Vector = std::vector<Scalar>;

inline Vector zeros(const Field& f, std::size_t n) { return Vector(n, f.zero()); }

inline Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v = zeros(f, n);
  v[i] = f.one();
  return v;
}

inline bool is_zero(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

inline void axpy(const Scalar& a, std::span<const Scalar> x, std::span<Scalar> y) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

inline Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Vector sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vector scale(const Scalar& s, std::span<const Scalar> v) {
  Vector r(v.begin(), v.end());
  for (auto& x : r) x *= s;
  return r;
}

/// Dense row-major matrix over a declared field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(Field field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length differs from column count");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(Field field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length differs from row count");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  Vector apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "vector length differs from column count");
    Vector y = zeros(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Scalar acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) {
        const Scalar& a = (*this)(r, c);
        if (!a.is_zero() && !x[c].is_zero()) acc += a * x[c];
      }
      y[r] = std::move(acc);
    }
    return y;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shape mismatch");
    Matrix p(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        axpy(aik, b.row(k), p.row(i));
      }
    }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace lincat

#endif  // LINCAT_MATRIX_HPP
