#ifndef LINCAT_BIMODULE_HPP
#define LINCAT_BIMODULE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lincat/constructions.hpp"
#include "lincat/equivalence.hpp"
#include "lincat/functor.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// Product in a one-object category read as an algebra: a·b = a;b.
inline Vector algebra_product(const LinCat& a, std::span<const Scalar> x, std::span<const Scalar> y) {
  return a.compose(0, 0, 0, x, y);
}

/// A (B,C)-bimodule: left B-action, right C-action, B and C one-object.
///
/// left_action[(i·m + j)·m + l] is the coefficient of v_l in b_i·v_j and
/// right_action[(j·dim C + k)·m + l] that of v_l in v_j·c_k. A module over
/// a multi-object category is passed through its matrix ring first.
class Bimodule {
 public:
  Bimodule() = default;

  static Bimodule make(LinCat left, LinCat right, std::size_t dim, Vector left_action, Vector right_action) {
    Bimodule b = make_unchecked(std::move(left), std::move(right), dim, std::move(left_action), std::move(right_action));
    auto v = b.violations(64);
    if (!v.empty()) throw AxiomViolation(std::move(v));
    return b;
  }

  static Bimodule make_unchecked(LinCat left, LinCat right, std::size_t dim, Vector left_action, Vector right_action) {
    if (left.size() != 1 || right.size() != 1) throw Error(ErrorKind::BadParams, "bimodules are over one-object categories");
    if (left.field() != right.field()) throw Error(ErrorKind::FieldMismatch, "bimodule over algebras with different fields");
    const std::size_t db = left.dim(0, 0), dc = right.dim(0, 0);
    if (left_action.size() != db * dim * dim || right_action.size() != dim * dc * dim)
      throw Error(ErrorKind::ShapeMismatch, "action tensor has the wrong size");
    for (const auto& s : left_action)
      if (!left.field().contains(s)) throw Error(ErrorKind::FieldMismatch, "action coefficient outside the field");
    for (const auto& s : right_action)
      if (!left.field().contains(s)) throw Error(ErrorKind::FieldMismatch, "action coefficient outside the field");
    Bimodule b;
    b.left_ = std::move(left);
    b.right_ = std::move(right);
    b.dim_ = dim;
    b.la_ = std::move(left_action);
    b.ra_ = std::move(right_action);
    return b;
  }

  /// The algebra A as an (A,A)-bimodule.
  static Bimodule regular(const LinCat& a) {
    const std::size_t d = a.dim(0, 0);
    Vector t(d * d * d, a.zero());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& [k, v] : a.basis_product(0, 0, 0, i, j)) t[(i * d + j) * d + k] = v;
    return make(a, a, d, t, t);
  }

  const LinCat& left() const noexcept { return left_; }
  const LinCat& right() const noexcept { return right_; }
  const Field& field() const { return left_.field(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t left_dim() const { return left_.dim(0, 0); }
  std::size_t right_dim() const { return right_.dim(0, 0); }
  const Vector& left_action() const noexcept { return la_; }
  const Vector& right_action() const noexcept { return ra_; }

  Vector act_left(std::span<const Scalar> b, std::span<const Scalar> v) const {
    Vector r = zeros(field(), dim_);
    const std::size_t db = left_dim();
    for (std::size_t i = 0; i < db; ++i) {
      if (b[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (v[j].is_zero()) continue;
        const Scalar w = b[i] * v[j];
        for (std::size_t l = 0; l < dim_; ++l) {
          const Scalar& t = la_[(i * dim_ + j) * dim_ + l];
          if (!t.is_zero()) r[l] += w * t;
        }
      }
    }
    return r;
  }

  Vector act_right(std::span<const Scalar> v, std::span<const Scalar> c) const {
    Vector r = zeros(field(), dim_);
    const std::size_t dc = right_dim();
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t k = 0; k < dc; ++k) {
        if (c[k].is_zero()) continue;
        const Scalar w = v[j] * c[k];
        for (std::size_t l = 0; l < dim_; ++l) {
          const Scalar& t = ra_[(j * dc + k) * dim_ + l];
          if (!t.is_zero()) r[l] += w * t;
        }
      }
    }
    return r;
  }

  /// Residuals of the bimodule equations on basis elements:
  /// BimL (b b')v = b(b'v), BimR (vc)c' = v(cc'), BimC (bv)c = b(vc),
  /// BimIdL 1·v = v, BimIdR v·1 = v. Indices are 1-based basis positions.
  std::vector<Violation> violations(std::size_t limit = std::numeric_limits<std::size_t>::max()) const {
    std::vector<Violation> out;
    const Field& f = field();
    const std::size_t db = left_dim(), dc = right_dim();
    auto report = [&](const char* eq, std::vector<std::size_t> idx, const Vector& r) {
      for (std::size_t l = 0; l < r.size() && out.size() < limit; ++l)
        if (!r[l].is_zero()) {
          auto i = idx;
          i.push_back(l + 1);
          out.push_back({eq, std::move(i), r[l].to_string()});
        }
    };
    for (std::size_t j = 0; j < dim_ && out.size() < limit; ++j) {
      const Vector v = unit_vector(f, dim_, j);
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t k = 0; k < db; ++k) {
          const Vector bi = unit_vector(f, db, i), bk = unit_vector(f, db, k);
          report("BimL", {i + 1, k + 1, j + 1}, sub(act_left(algebra_product(left_, bi, bk), v), act_left(bi, act_left(bk, v))));
        }
      for (std::size_t i = 0; i < dc; ++i)
        for (std::size_t k = 0; k < dc; ++k) {
          const Vector ci = unit_vector(f, dc, i), ck = unit_vector(f, dc, k);
          report("BimR", {j + 1, i + 1, k + 1}, sub(act_right(act_right(v, ci), ck), act_right(v, algebra_product(right_, ci, ck))));
        }
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t k = 0; k < dc; ++k) {
          const Vector bi = unit_vector(f, db, i), ck = unit_vector(f, dc, k);
          report("BimC", {i + 1, j + 1, k + 1}, sub(act_right(act_left(bi, v), ck), act_left(bi, act_right(v, ck))));
        }
      report("BimIdL", {j + 1}, sub(act_left(left_.unit(0), v), v));
      report("BimIdR", {j + 1}, sub(act_right(v, right_.unit(0)), v));
    }
    return out;
  }

  bool is_valid() const { return violations(1).empty(); }

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.dim_ == b.dim_ && a.la_ == b.la_ && a.ra_ == b.ra_;
  }

 private:
  LinCat left_;
  LinCat right_;
  std::size_t dim_ = 0;
  Vector la_;
  Vector ra_;
};

/// A linear map between two (B,C)-bimodules, dst.dim() rows by src.dim() columns.
struct BimoduleMap {
  Bimodule src;
  Bimodule dst;
  Matrix matrix;

  /// Morbim residuals: f(b·v) = b·f(v) and f(v·c) = f(v)·c on basis elements.
  std::vector<Violation> violations(std::size_t limit = std::numeric_limits<std::size_t>::max()) const {
    std::vector<Violation> out;
    if (!(src.left() == dst.left()) || !(src.right() == dst.right())) {
      out.push_back({"Algebras", {}, "source and target are over different algebras"});
      return out;
    }
    if (matrix.rows() != dst.dim() || matrix.cols() != src.dim()) {
      out.push_back({"Shape", {matrix.rows(), matrix.cols()}, "matrix shape differs from the module dimensions"});
      return out;
    }
    const Field& f = src.field();
    auto report = [&](const char* eq, std::vector<std::size_t> idx, const Vector& r) {
      for (std::size_t l = 0; l < r.size() && out.size() < limit; ++l)
        if (!r[l].is_zero()) {
          auto i = idx;
          i.push_back(l + 1);
          out.push_back({eq, std::move(i), r[l].to_string()});
        }
    };
    for (std::size_t j = 0; j < src.dim(); ++j) {
      const Vector v = unit_vector(f, src.dim(), j);
      const Vector fv = matrix.apply(v);
      for (std::size_t i = 0; i < src.left_dim(); ++i) {
        const Vector b = unit_vector(f, src.left_dim(), i);
        report("MorbimL", {i + 1, j + 1}, sub(matrix.apply(src.act_left(b, v)), dst.act_left(b, fv)));
      }
      for (std::size_t k = 0; k < src.right_dim(); ++k) {
        const Vector c = unit_vector(f, src.right_dim(), k);
        report("MorbimR", {j + 1, k + 1}, sub(matrix.apply(src.act_right(v, c)), dst.act_right(fv, c)));
      }
    }
    return out;
  }

  bool is_valid() const { return violations(1).empty(); }
  bool is_isomorphism() const { return matrix.rows() == matrix.cols() && rank(matrix) == matrix.rows() && is_valid(); }
};

/// The bimodule ⊕_{y,x} D(y, f x) over ([D], [C]): left action by
/// composition in D, right action through f. Summands are ordered with y
/// outer and x inner.
inline Bimodule bimodule_of_functor(const LinFunctor& f) {
  const LinCat& C = f.src();
  const LinCat& D = f.dst();
  const MatrixRing rc = matrix_ring(C), rd = matrix_ring(D);
  const std::size_t nc = C.size(), nd = D.size();
  std::vector<std::size_t> off(nd * nc);
  std::size_t m = 0;
  for (std::size_t y = 0; y < nd; ++y)
    for (std::size_t x = 0; x < nc; ++x) {
      off[y * nc + x] = m;
      m += D.dim(y, f.object(x));
    }
  const std::size_t db = rd.algebra.dim(0, 0), dc = rc.algebra.dim(0, 0);
  const Field& F = C.field();
  Vector la(db * m * m, F.zero()), ra(m * dc * m, F.zero());
  // d ∈ D(y', y) acting on v ∈ D(y, fx)
  for (std::size_t yp = 0; yp < nd; ++yp)
    for (std::size_t y = 0; y < nd; ++y)
      for (std::size_t x = 0; x < nc; ++x) {
        const std::size_t fx = f.object(x);
        for (std::size_t i = 0; i < D.dim(yp, y); ++i)
          for (std::size_t j = 0; j < D.dim(y, fx); ++j)
            for (const auto& [k, v] : D.basis_product(yp, y, fx, i, j)) {
              const std::size_t I = rd.offset(yp, y) + i, J = off[y * nc + x] + j, K = off[yp * nc + x] + k;
              la[(I * m + J) * m + K] = v;
            }
      }
  // v ∈ D(y, fx) acted on by c ∈ C(x, x'), i.e. v ; f(c)
  for (std::size_t y = 0; y < nd; ++y)
    for (std::size_t x = 0; x < nc; ++x)
      for (std::size_t xp = 0; xp < nc; ++xp) {
        const std::size_t fx = f.object(x), fxp = f.object(xp);
        const std::size_t dfx = D.dim(fx, fxp);
        const auto& mat = f.matrix(x, xp);
        for (std::size_t j = 0; j < D.dim(y, fx); ++j)
          for (std::size_t k = 0; k < C.dim(x, xp); ++k) {
            const std::size_t J = off[y * nc + x] + j, K = rc.offset(x, xp) + k;
            for (std::size_t l = 0; l < dfx; ++l) {
              const Scalar& w = mat[l * C.dim(x, xp) + k];
              if (w.is_zero()) continue;
              for (const auto& [p, v] : D.basis_product(y, fx, fxp, j, l)) ra[(J * dc + K) * m + off[y * nc + xp] + p] += w * v;
            }
          }
      }
  return Bimodule::make(rd.algebra, rc.algebra, m, std::move(la), std::move(ra));
}

/// A quotient V/R presented by the non-pivot coordinates of R's echelon basis.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subspace relations) : rel_(std::move(relations)), free_(rel_.free_columns()) {}

  std::size_t dim() const noexcept { return free_.size(); }
  const Subspace& relations() const noexcept { return rel_; }
  /// Representative in V of the i-th quotient basis vector.
  Vector lift(std::size_t i) const { return unit_vector(rel_.field(), rel_.ambient(), free_[i]); }
  /// Quotient coordinates of v.
  Vector project(std::span<const Scalar> v) const {
    const Vector r = rel_.reduce(v);
    Vector out;
    out.reserve(free_.size());
    for (auto c : free_) out.push_back(r[c]);
    return out;
  }

 private:
  Subspace rel_;
  std::vector<std::size_t> free_;
};

/// V ⊗_C W: the (B,E)-bimodule V ⊗_k W modulo {v·c ⊗ w − v ⊗ c·w}.
/// Elementary tensors v_a ⊗ w_b have index a·dim W + b.
struct BalancedTensor {
  Bimodule module;
  Quotient quotient;
};

inline BalancedTensor tensor_over_middle(const Bimodule& v, const Bimodule& w) {
  if (!(v.right() == w.left())) throw Error(ErrorKind::AlgebraMismatch, "middle algebras differ");
  const Field& F = v.field();
  const std::size_t m = v.dim(), n = w.dim(), dc = v.right_dim(), N = m * n;
  SparseMatrix gens(F, m * dc * n, N);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t k = 0; k < dc; ++k) {
      const Vector c = unit_vector(F, dc, k);
      const Vector vc = v.act_right(unit_vector(F, m, a), c);
      for (std::size_t b = 0; b < n; ++b) {
        const Vector cw = w.act_left(c, unit_vector(F, n, b));
        const std::size_t row = (a * dc + k) * n + b;
        for (std::size_t p = 0; p < m; ++p) gens.add(row, p * n + b, vc[p]);
        for (std::size_t q = 0; q < n; ++q) gens.add(row, a * n + q, -cw[q]);
      }
    }
  gens.finalize();
  BalancedTensor out;
  out.quotient = Quotient(image(gens.transpose()));
  const std::size_t d = out.quotient.dim(), db = v.left_dim(), de = w.right_dim();
  Vector la(db * d * d, F.zero()), ra(d * de * d, F.zero());
  for (std::size_t j = 0; j < d; ++j) {
    const Vector rep = out.quotient.lift(j);
    std::size_t a = 0, b = 0;
    for (std::size_t t = 0; t < N; ++t)
      if (!rep[t].is_zero()) a = t / n, b = t % n;
    const Vector va = unit_vector(F, m, a), wb = unit_vector(F, n, b);
    for (std::size_t i = 0; i < db; ++i) {
      const Vector bv = v.act_left(unit_vector(F, db, i), va);
      Vector t = zeros(F, N);
      for (std::size_t p = 0; p < m; ++p) t[p * n + b] = bv[p];
      const Vector q = out.quotient.project(t);
      for (std::size_t l = 0; l < d; ++l) la[(i * d + j) * d + l] = q[l];
    }
    for (std::size_t k = 0; k < de; ++k) {
      const Vector we = w.act_right(wb, unit_vector(F, de, k));
      Vector t = zeros(F, N);
      for (std::size_t q = 0; q < n; ++q) t[a * n + q] = we[q];
      const Vector q = out.quotient.project(t);
      for (std::size_t l = 0; l < d; ++l) ra[(j * de + k) * d + l] = q[l];
    }
  }
  out.module = Bimodule::make(v.left(), w.right(), d, std::move(la), std::move(ra));
  return out;
}

/// The B-dual W = Hom_B(V, B) of a (B,C)-bimodule V with its pairings.
///
/// A basis element of W is a map φ stored as a dim B × dim V matrix
/// (`dual_maps`). W is a (C,B)-bimodule by (c·φ)(u) = φ(u·c) and
/// (φ·b)(u) = φ(u)·b. e_B(u ⊗ φ) = φ(u) on V ⊗_C W; ρ(c) = (u ↦ u·c) into
/// End_B(V); e_C(φ ⊗ u) = ρ⁻¹(u' ↦ φ(u')·u) on W ⊗_B V, present only when
/// ρ is bijective.
struct DualPairings {
  Bimodule dual;
  std::vector<Matrix> dual_maps;
  BalancedTensor v_w;
  Matrix e_b;
  Subspace endomorphisms;  // End_B(V) inside dim V × dim V matrices, row-major
  Matrix rho;
  bool rho_bijective = false;
  std::optional<BalancedTensor> w_v;
  std::optional<Matrix> e_c;
};

namespace detail {

// Left-B-linear maps V → X as a subspace of row-major dim X × dim V matrices.
template <class ActX>
Subspace left_linear_maps(const Bimodule& v, std::size_t dx, ActX act_x) {
  const Field& F = v.field();
  const std::size_t m = v.dim(), db = v.left_dim(), unknowns = dx * m;
  // one block of dx equations per (b_i, v_j): φ(b_i·v_j) − b_i·φ(v_j) = 0
  SparseMatrix eqs(F, db * m * dx, unknowns);
  for (std::size_t i = 0; i < db; ++i) {
    const Vector b = unit_vector(F, db, i);
    std::vector<Vector> imgs;
    for (std::size_t s = 0; s < dx; ++s) imgs.push_back(act_x(b, unit_vector(F, dx, s)));
    for (std::size_t j = 0; j < m; ++j) {
      const Vector bv = v.act_left(b, unit_vector(F, m, j));
      const std::size_t row = (i * m + j) * dx;
      for (std::size_t p = 0; p < m; ++p)
        if (!bv[p].is_zero())
          for (std::size_t r = 0; r < dx; ++r) eqs.add(row + r, r * m + p, bv[p]);
      for (std::size_t s = 0; s < dx; ++s)
        for (std::size_t r = 0; r < dx; ++r)
          if (!imgs[s][r].is_zero()) eqs.add(row + r, s * m + j, -imgs[s][r]);
    }
  }
  eqs.finalize();
  return kernel(eqs);
}

inline Matrix reshape(const Field& F, const Vector& v, std::size_t rows, std::size_t cols) {
  Matrix m(F, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

inline Vector flatten(const Matrix& m) {
  Vector v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace detail

inline DualPairings dual_and_pairings(const Bimodule& v) {
  const Field& F = v.field();
  const LinCat& B = v.left();
  const std::size_t m = v.dim(), db = v.left_dim(), dc = v.right_dim();
  DualPairings out;

  const Subspace hom = detail::left_linear_maps(v, db, [&](std::span<const Scalar> b, std::span<const Scalar> x) {
    return algebra_product(B, b, x);
  });
  for (const auto& phi : hom.basis()) out.dual_maps.push_back(detail::reshape(F, phi, db, m));
  const std::size_t n = hom.dim();
  Vector la(dc * n * n, F.zero()), ra(n * db * n, F.zero());
  for (std::size_t j = 0; j < n; ++j) {
    const Matrix& phi = out.dual_maps[j];
    for (std::size_t k = 0; k < dc; ++k) {
      Matrix cphi(F, db, m);
      for (std::size_t u = 0; u < m; ++u) {
        const Vector img = phi.apply(v.act_right(unit_vector(F, m, u), unit_vector(F, dc, k)));
        for (std::size_t r = 0; r < db; ++r) cphi(r, u) = img[r];
      }
      const Vector c = hom.coordinates_or_throw(detail::flatten(cphi));
      for (std::size_t l = 0; l < n; ++l) la[(k * n + j) * n + l] = c[l];
    }
    for (std::size_t i = 0; i < db; ++i) {
      Matrix phib(F, db, m);
      for (std::size_t u = 0; u < m; ++u) {
        const Vector img = algebra_product(B, phi.column(u), unit_vector(F, db, i));
        for (std::size_t r = 0; r < db; ++r) phib(r, u) = img[r];
      }
      const Vector c = hom.coordinates_or_throw(detail::flatten(phib));
      for (std::size_t l = 0; l < n; ++l) ra[(j * db + i) * n + l] = c[l];
    }
  }
  out.dual = Bimodule::make(v.right(), B, n, std::move(la), std::move(ra));

  out.v_w = tensor_over_middle(v, out.dual);
  out.e_b = Matrix(F, db, out.v_w.quotient.dim());
  for (std::size_t t = 0; t < out.v_w.quotient.dim(); ++t) {
    const Vector rep = out.v_w.quotient.lift(t);
    for (std::size_t idx = 0; idx < rep.size(); ++idx)
      if (!rep[idx].is_zero()) {
        const Vector img = out.dual_maps[idx % n].column(idx / n);
        for (std::size_t r = 0; r < db; ++r) out.e_b(r, t) = img[r];
      }
  }

  out.endomorphisms = detail::left_linear_maps(v, m, [&](std::span<const Scalar> b, std::span<const Scalar> x) {
    return v.act_left(b, x);
  });
  out.rho = Matrix(F, m * m, dc);
  for (std::size_t k = 0; k < dc; ++k)
    for (std::size_t u = 0; u < m; ++u) {
      const Vector img = v.act_right(unit_vector(F, m, u), unit_vector(F, dc, k));
      for (std::size_t r = 0; r < m; ++r) out.rho(r * m + u, k) = img[r];
    }
  out.rho_bijective = rank(out.rho) == dc && out.endomorphisms.dim() == dc;
  if (!out.rho_bijective) return out;

  out.w_v = tensor_over_middle(out.dual, v);
  Matrix e_c(F, dc, out.w_v->quotient.dim());
  for (std::size_t t = 0; t < out.w_v->quotient.dim(); ++t) {
    const Vector rep = out.w_v->quotient.lift(t);
    for (std::size_t idx = 0; idx < rep.size(); ++idx)
      if (!rep[idx].is_zero()) {
        const Matrix& phi = out.dual_maps[idx / m];
        const Vector u = unit_vector(F, m, idx % m);
        // u' ↦ φ(u')·u as a row-major m × m matrix
        Vector g = zeros(F, m * m);
        for (std::size_t up = 0; up < m; ++up) {
          const Vector img = v.act_left(phi.column(up), u);
          for (std::size_t r = 0; r < m; ++r) g[r * m + up] = img[r];
        }
        auto c = solve(out.rho, g);
        if (!c) throw std::logic_error("pairing value lies outside the image of ρ");
        for (std::size_t r = 0; r < dc; ++r) e_c(r, t) = (*c)[r];
      }
  }
  out.e_c = std::move(e_c);
  return out;
}

/// Invertibility of a bimodule: ρ, e_B and e_C all bijective. The returned
/// pairings realize V ⊗_C W ≅ B and W ⊗_B V ≅ C as bimodule isomorphisms,
/// which are re-checked before a positive verdict.
struct InvertibilityReport {
  bool invertible = false;
  std::string reason;  // "rho", "e_B" or "e_C" when not invertible
  DualPairings pairings;
};

inline InvertibilityReport is_invertible(const Bimodule& v) {
  InvertibilityReport rep;
  rep.pairings = dual_and_pairings(v);
  const auto& p = rep.pairings;
  auto bijective = [](const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); };
  if (!p.rho_bijective) {
    rep.reason = "rho";
    return rep;
  }
  if (!bijective(p.e_b)) {
    rep.reason = "e_B";
    return rep;
  }
  if (!bijective(*p.e_c)) {
    rep.reason = "e_C";
    return rep;
  }
  const BimoduleMap eb{p.v_w.module, Bimodule::regular(v.left()), p.e_b};
  const BimoduleMap ec{p.w_v->module, Bimodule::regular(v.right()), *p.e_c};
  if (!eb.is_isomorphism() || !ec.is_isomorphism()) throw std::logic_error("bijective pairing is not a bimodule map");
  rep.invertible = true;
  return rep;
}

/// Morita criterion for a functor: invertibility of its bimodule.
inline InvertibilityReport morita_check(const LinFunctor& f) { return is_invertible(bimodule_of_functor(f)); }

/// Searches for an isomorphism of bimodules a → b by solving the Morbim
/// system and testing the solution basis, its sum, then seeded combinations.
inline std::optional<BimoduleMap> find_bimodule_isomorphism(const Bimodule& a, const Bimodule& b, std::size_t trials = 16,
                                                            std::uint64_t seed = 0) {
  if (!(a.left() == b.left()) || !(a.right() == b.right()) || a.dim() != b.dim()) return std::nullopt;
  const Field& F = a.field();
  const std::size_t m = a.dim(), db = a.left_dim(), dc = a.right_dim(), unknowns = m * m;
  std::vector<Vector> rows;
  auto add_equations = [&](const Vector& src_img, std::size_t col, const std::vector<Vector>& dst_cols) {
    // f(src_img) − (action applied to f(e_col)) = 0 with f(e_s) = column s
    for (std::size_t r = 0; r < m; ++r) {
      Vector e = zeros(F, unknowns);
      for (std::size_t s = 0; s < m; ++s)
        if (!src_img[s].is_zero()) e[r * m + s] += src_img[s];
      for (std::size_t s = 0; s < m; ++s)
        if (!dst_cols[s][r].is_zero()) e[s * m + col] -= dst_cols[s][r];
      if (!is_zero(e)) rows.push_back(std::move(e));
    }
  };
  for (std::size_t j = 0; j < m; ++j) {
    const Vector v = unit_vector(F, m, j);
    for (std::size_t i = 0; i < db; ++i) {
      const Vector bi = unit_vector(F, db, i);
      std::vector<Vector> cols;
      for (std::size_t s = 0; s < m; ++s) cols.push_back(b.act_left(bi, unit_vector(F, m, s)));
      add_equations(a.act_left(bi, v), j, cols);
    }
    for (std::size_t k = 0; k < dc; ++k) {
      const Vector ck = unit_vector(F, dc, k);
      std::vector<Vector> cols;
      for (std::size_t s = 0; s < m; ++s) cols.push_back(b.act_right(unit_vector(F, m, s), ck));
      add_equations(a.act_right(v, ck), j, cols);
    }
  }
  const Subspace sol = rows.empty() ? Subspace::whole(F, unknowns) : kernel(Matrix::from_rows(F, unknowns, rows));
  auto attempt = [&](const Vector& coords) -> std::optional<BimoduleMap> {
    BimoduleMap f{a, b, detail::reshape(F, sol.combine(coords), m, m)};
    if (f.is_isomorphism()) return f;
    return std::nullopt;
  };
  const std::size_t k = sol.dim();
  if (k == 0) {
    if (m == 0) return BimoduleMap{a, b, Matrix(F, 0, 0)};
    return std::nullopt;
  }
  Vector ones;
  for (std::size_t i = 0; i < k; ++i) {
    if (auto f = attempt(unit_vector(F, k, i))) return f;
    ones.push_back(F.one());
  }
  if (auto f = attempt(ones)) return f;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Vector coords;
    for (std::size_t i = 0; i < k; ++i) coords.push_back(detail::random_scalar(F, rng));
    if (auto f = attempt(coords)) return f;
  }
  return std::nullopt;
}

}  // namespace lincat

#endif  // LINCAT_BIMODULE_HPP
