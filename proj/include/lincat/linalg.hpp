#ifndef LINCAT_LINALG_HPP
#define LINCAT_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lincat/matrix.hpp"

namespace lincat {

/// Reduced row echelon form: the nonzero rows of the RREF plus their pivot columns.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {

// Scales every row of a rational matrix by the lcm of its denominators.
inline void clear_denominators(Matrix& w) {
  const Field& f = w.field();
  for (std::size_t r = 0; r < w.rows(); ++r) {
    mpz_class l = 1;
    for (const auto& s : w.row(r))
      if (!s.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.denominator().get_mpz_t());
    if (l == 1) continue;
    const Scalar factor = f.from_mpq(mpq_class(l));
    for (auto& s : w.row(r))
      if (!s.is_zero()) s *= factor;
  }
}

// Fraction-free (Bareiss) forward elimination on an integer matrix.
// Pivot = first nonzero entry at or below the current row, columns left to right.
inline std::vector<std::size_t> bareiss_forward(Matrix& w) {
  std::vector<std::size_t> pivots;
  const Field& f = w.field();
  Scalar prev = f.one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t i = r;
    while (i < w.rows() && w(i, c).is_zero()) ++i;
    if (i == w.rows()) continue;
    if (i != r)
      for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(i, j), w(r, j));
    const Scalar piv = w(r, c);
    const bool unit_prev = prev.is_one();
    for (std::size_t k = r + 1; k < w.rows(); ++k) {
      const Scalar a = w(k, c);
      for (std::size_t j = c + 1; j < w.cols(); ++j) {
        Scalar& x = w(k, j);
        const Scalar& y = w(r, j);
        if (x.is_zero() && (a.is_zero() || y.is_zero())) continue;
        Scalar val = piv * x;
        if (!a.is_zero() && !y.is_zero()) val -= a * y;
        x = unit_prev ? std::move(val) : val / prev;
      }
      w(k, c) = f.zero();
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Plain Gaussian forward elimination (prime fields).
inline std::vector<std::size_t> gauss_forward(Matrix& w) {
  std::vector<std::size_t> pivots;
  const Field& f = w.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t i = r;
    while (i < w.rows() && w(i, c).is_zero()) ++i;
    if (i == w.rows()) continue;
    if (i != r)
      for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(i, j), w(r, j));
    const Scalar inv = w(r, c).inverse();
    for (std::size_t j = c; j < w.cols(); ++j)
      if (!w(r, j).is_zero()) w(r, j) *= inv;
    for (std::size_t k = r + 1; k < w.rows(); ++k) {
      const Scalar a = w(k, c);
      if (a.is_zero()) continue;
      for (std::size_t j = c; j < w.cols(); ++j)
        if (!w(r, j).is_zero()) w(k, j) -= a * w(r, j);
      w(k, c) = f.zero();
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<std::size_t> forward_eliminate(Matrix& w) {
  if (w.field().is_rational()) {
    clear_denominators(w);
    return bareiss_forward(w);
  }
  return gauss_forward(w);
}

}  // namespace detail

/// Exact RREF. Over ℚ the forward pass is fraction-free; divisions only
/// happen during the final back substitution.
inline RowEchelon reduced_row_echelon(const Matrix& m) {
  Matrix w = m;
  const auto pivots = detail::forward_eliminate(w);
  const std::size_t rank = pivots.size();
  Matrix red(m.field(), rank, m.cols());
  for (std::size_t r = 0; r < rank; ++r) {
    const Scalar inv = w(r, pivots[r]).inverse();
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!w(r, c).is_zero()) red(r, c) = w(r, c) * inv;
  }
  for (std::size_t k = rank; k-- > 0;) {
    const std::size_t pc = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      const Scalar a = red(i, pc);
      if (a.is_zero()) continue;
      for (std::size_t c = pc; c < m.cols(); ++c)
        if (!red(k, c).is_zero()) red(i, c) -= a * red(k, c);
    }
  }
  return {std::move(red), pivots};
}

inline std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return detail::forward_eliminate(w).size();
}

/// Basis of the right null space, one vector per free column in increasing
/// column order; the free coordinate is 1 and the other free coordinates 0.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zeros(m.field(), m.cols());
    v[f] = m.field().one();
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (!e.reduced(r, f).is_zero()) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with m·x = b, or nullopt when b is outside the image. Free variables are set to 0.
inline std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "right-hand side length differs from row count");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const RowEchelon e = reduced_row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zeros(m.field(), m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

/// A linear subspace of k^n stored by its RREF basis. The basis is therefore
/// canonical: equal subspaces have identical bases, and the coordinates of a
/// member are read off at the pivot columns.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field field, std::size_t ambient) : field_(field), ambient_(ambient) {}

  static Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& generators) {
    Subspace s(field, ambient);
    if (generators.empty() || ambient == 0) return s;
    const RowEchelon e = reduced_row_echelon(Matrix::from_rows(field, ambient, generators));
    s.pivots_ = e.pivots;
    for (std::size_t r = 0; r < e.rank(); ++r) s.basis_.emplace_back(e.reduced.row(r).begin(), e.reduced.row(r).end());
    return s;
  }

  static Subspace whole(Field field, std::size_t ambient) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < ambient; ++i) gens.push_back(unit_vector(field, ambient, i));
    return span(field, ambient, gens);
  }

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v minus its component along the basis, computed through the pivots.
  Vector reduce(std::span<const Scalar> v) const {
    Vector r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Scalar a = r[pivots_[i]];
      if (!a.is_zero()) axpy(-a, basis_[i], r);
    }
    return r;
  }

  bool contains(std::span<const Scalar> v) const { return lincat::is_zero(reduce(v)); }

  std::optional<Vector> coordinates(std::span<const Scalar> v) const {
    if (!contains(v)) return std::nullopt;
    Vector c;
    c.reserve(basis_.size());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }

  Vector coordinates_or_throw(std::span<const Scalar> v) const {
    auto c = coordinates(v);
    if (!c) throw std::logic_error("vector is not in the subspace");
    return *c;
  }

  Vector combine(std::span<const Scalar> coords) const {
    Vector v = zeros(field_, ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i) axpy(coords[i], basis_[i], v);
    return v;
  }

  /// Columns without a pivot; the unit vectors there span a complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<bool> piv(ambient_, false);
    for (auto p : pivots_) piv[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (!piv[c]) out.push_back(c);
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  /// Adopts rows already in reduced row echelon form with the given pivots.
  static Subspace from_reduced(Field field, std::size_t ambient, std::vector<Vector> rows, std::vector<std::size_t> pivots) {
    Subspace s(field, ambient);
    s.basis_ = std::move(rows);
    s.pivots_ = std::move(pivots);
    return s;
  }

 private:
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Column space of m, echelonized.
inline Subspace image(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.field(), m.rows(), cols);
}

/// Null space of m, echelonized.
inline Subspace kernel(const Matrix& m) { return Subspace::span(m.field(), m.cols(), kernel_basis(m)); }

/// Row-compressed matrix used to assemble large differentials. Entries are
/// accumulated with `add` and merged by `finalize`.
class SparseMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, Scalar>>;

  SparseMatrix() = default;
  SparseMatrix(Field field, std::size_t rows, std::size_t cols) : field_(field), cols_(cols), data_(rows) {}

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t r) const { return data_[r]; }

  void add(std::size_t r, std::size_t c, const Scalar& v) {
    if (!v.is_zero()) data_[r].emplace_back(c, v);
  }

  void finalize() {
    for (auto& row : data_) {
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      Row merged;
      for (auto& [c, v] : row) {
        if (!merged.empty() && merged.back().first == c)
          merged.back().second += v;
        else
          merged.emplace_back(c, std::move(v));
        if (merged.back().second.is_zero()) merged.pop_back();
      }
      row = std::move(merged);
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  Vector apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "vector length differs from column count");
    Vector y = zeros(field_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r])
        if (!x[c].is_zero()) y[r] += v * x[c];
    return y;
  }

  Matrix dense() const {
    Matrix m(field_, rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r]) m(r, c) += v;
    return m;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(field_, cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw Error(ErrorKind::ShapeMismatch, "sparse product shape mismatch");
    SparseMatrix p(a.field_, a.rows(), b.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (const auto& [k, v] : a.data_[r])
        for (const auto& [c, w] : b.data_[k]) p.data_[r].emplace_back(c, v * w);
    p.finalize();
    return p;
  }

 private:
  Field field_;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

namespace detail {

using SparseRow = SparseMatrix::Row;

// r − a·p for sorted sparse rows.
inline SparseRow sparse_axpy(const SparseRow& r, const Scalar& a, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -(a * p[j].second));
      ++j;
    } else {
      Scalar v = r[i].second - a * p[j].second;
      if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduced row echelon form of the span of sparse rows.
inline Subspace sparse_row_space(const Field& f, std::size_t ambient, const std::vector<SparseRow>& rows) {
  std::map<std::size_t, SparseRow> piv;  // leading column ↦ monic row
  for (const auto& input : rows) {
    SparseRow r = input;
    while (!r.empty()) {
      auto it = piv.find(r.front().first);
      if (it == piv.end()) break;
      r = sparse_axpy(r, r.front().second, it->second);
    }
    if (r.empty()) continue;
    const Scalar inv = r.front().second.inverse();
    for (auto& [c, v] : r) v = v * inv;
    piv.emplace(r.front().first, std::move(r));
  }
  // back-substitution, last pivot first
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    SparseRow& r = it->second;
    for (std::size_t k = 1; k < r.size();) {
      auto p = piv.find(r[k].first);
      if (p == piv.end()) {
        ++k;
        continue;
      }
      r = sparse_axpy(r, r[k].second, p->second);
    }
  }
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;
  for (const auto& [c, r] : piv) {
    Vector v = zeros(f, ambient);
    for (const auto& [k, x] : r) v[k] = x;
    basis.push_back(std::move(v));
    pivots.push_back(c);
  }
  return Subspace::from_reduced(f, ambient, std::move(basis), std::move(pivots));
}

}  // namespace detail

/// Column space of a sparse matrix, echelonized.
inline Subspace image(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  std::vector<SparseMatrix::Row> rows;
  for (std::size_t r = 0; r < t.rows(); ++r) rows.push_back(t.row(r));
  return detail::sparse_row_space(m.field(), m.rows(), rows);
}

/// Null space of a sparse matrix, echelonized.
inline Subspace kernel(const SparseMatrix& m) {
  std::vector<SparseMatrix::Row> rows;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) rows.push_back(m.row(r));
  const Subspace rs = detail::sparse_row_space(m.field(), m.cols(), rows);
  std::vector<SparseMatrix::Row> gens;
  for (auto f : rs.free_columns()) {
    SparseMatrix::Row g;
    for (std::size_t i = 0; i < rs.dim(); ++i) {
      const Scalar& v = rs.basis()[i][f];
      if (!v.is_zero()) g.emplace_back(rs.pivots()[i], -v);
    }
    g.emplace_back(f, m.field().one());
    std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    gens.push_back(std::move(g));
  }
  return detail::sparse_row_space(m.field(), m.cols(), gens);
}

}  // namespace lincat

#endif  // LINCAT_LINALG_HPP
