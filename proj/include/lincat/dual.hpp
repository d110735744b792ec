#ifndef LINCAT_DUAL_HPP
#define LINCAT_DUAL_HPP

#include <string>
#include <vector>

#include "lincat/matrix.hpp"

namespace lincat {

/// a + bε with ε² = 0.
struct Dual {
  Scalar a;
  Scalar b;

  Dual() = default;
  Dual(Scalar re, Scalar eps) : a(std::move(re)), b(std::move(eps)) {}

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool is_one() const { return a.is_one() && b.is_zero(); }

  /// Invertible iff the constant part is; (a + bε)⁻¹ = a⁻¹ − b·a⁻²ε.
  Dual inverse() const {
    const Scalar ia = a.inverse();
    return {ia, -(b * ia * ia)};
  }

  std::string to_string() const {
    if (b.is_zero()) return a.to_string();
    return a.to_string() + " + " + b.to_string() + "*eps";
  }

  Dual operator-() const { return {-a, -b}; }
  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) {
    Scalar eps = x.a * y.b;
    if (!x.b.is_zero()) eps += x.b * y.a;
    return {x.a * y.a, std::move(eps)};
  }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }

  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }
};

/// Uniform access to the scalars of a base field and of its dual numbers.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Scalar> {
  static Scalar zero(const Field& f) { return f.zero(); }
  static Scalar one(const Field& f) { return f.one(); }
  static Scalar embed(const Scalar& s) { return s; }
  static bool invertible(const Scalar& s) { return !s.is_zero(); }
};

template <>
struct scalar_traits<Dual> {
  static Dual zero(const Field& f) { return {f.zero(), f.zero()}; }
  static Dual one(const Field& f) { return {f.one(), f.zero()}; }
  static Dual embed(const Scalar& s) { return {s, s - s}; }
  static bool invertible(const Dual& s) { return !s.a.is_zero(); }
};

using DualVector = std::vector<Dual>;

inline DualVector to_dual(const Vector& re, const Vector& eps) {
  DualVector v;
  v.reserve(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v.emplace_back(re[i], eps[i]);
  return v;
}

inline DualVector embed(const Vector& re) {
  DualVector v;
  v.reserve(re.size());
  for (const auto& s : re) v.push_back(scalar_traits<Dual>::embed(s));
  return v;
}

inline Vector constant_part(const DualVector& v) {
  Vector r;
  r.reserve(v.size());
  for (const auto& d : v) r.push_back(d.a);
  return r;
}

inline Vector epsilon_part(const DualVector& v) {
  Vector r;
  r.reserve(v.size());
  for (const auto& d : v) r.push_back(d.b);
  return r;
}

/// Square or rectangular matrix with dual-number entries, row-major.
class DualMatrix {
 public:
  DualMatrix() = default;
  DualMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, scalar_traits<Dual>::zero(field)) {}

  static DualMatrix identity(Field field, std::size_t n) {
    DualMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<Dual>::one(field);
    return m;
  }

  static DualMatrix from_parts(const Matrix& re, const Matrix& eps) {
    if (re.rows() != eps.rows() || re.cols() != eps.cols()) throw Error(ErrorKind::ShapeMismatch, "dual matrix parts differ in shape");
    DualMatrix m(re.field(), re.rows(), re.cols());
    for (std::size_t r = 0; r < re.rows(); ++r)
      for (std::size_t c = 0; c < re.cols(); ++c) m(r, c) = Dual(re(r, c), eps(r, c));
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Dual& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Dual& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix constant_part() const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m(i / cols_, i % cols_) = data_[i].a;
    return m;
  }

  Matrix epsilon_part() const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m(i / cols_, i % cols_) = data_[i].b;
    return m;
  }

  bool is_zero() const {
    for (const auto& d : data_)
      if (!d.is_zero()) return false;
    return true;
  }

  friend DualMatrix operator+(const DualMatrix& x, const DualMatrix& y) {
    check_shape(x, y);
    DualMatrix r = x;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += y.data_[i];
    return r;
  }

  friend DualMatrix operator-(const DualMatrix& x, const DualMatrix& y) {
    check_shape(x, y);
    DualMatrix r = x;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= y.data_[i];
    return r;
  }

  friend DualMatrix operator*(const Dual& s, const DualMatrix& x) {
    DualMatrix r = x;
    for (auto& d : r.data_) d = s * d;
    return r;
  }

  friend DualMatrix operator*(const DualMatrix& x, const DualMatrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::ShapeMismatch, "dual matrix product shape mismatch");
    DualMatrix p(x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Dual& a = x(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) p(i, j) += a * y(k, j);
      }
    return p;
  }

  friend bool operator==(const DualMatrix& x, const DualMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  static void check_shape(const DualMatrix& x, const DualMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error(ErrorKind::ShapeMismatch, "dual matrix shapes differ");
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Dual> data_;
};

}  // namespace lincat

#endif  // LINCAT_DUAL_HPP
