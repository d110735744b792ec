#ifndef LINCAT_FUNCTOR_HPP
#define LINCAT_FUNCTOR_HPP

#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "lincat/category.hpp"

namespace lincat {

template <class S>
using CatPtr = std::shared_ptr<const BasicLinCat<S>>;

template <class S>
CatPtr<S> share(BasicLinCat<S> c) {
  return std::make_shared<const BasicLinCat<S>>(std::move(c));
}

/// A linear functor: an object map and, for every pair (x,y), the matrix of
/// f_{xy}: C(x,y) → D(fx,fy), stored row-major with d'(fx,fy) rows and
/// d(x,y) columns, so (f_{xy})^i_j sits at row i, column j.
template <class S>
class BasicLinFunctor {
 public:
  using Vec = std::vector<S>;

  BasicLinFunctor() = default;

  static BasicLinFunctor make(CatPtr<S> src, CatPtr<S> dst, std::vector<std::size_t> object_map, std::vector<Vec> matrices) {
    BasicLinFunctor f = make_unchecked(std::move(src), std::move(dst), std::move(object_map), std::move(matrices));
    auto v = f.violations(64);
    if (!v.empty()) throw AxiomViolation(std::move(v));
    return f;
  }

  static BasicLinFunctor make_unchecked(CatPtr<S> src, CatPtr<S> dst, std::vector<std::size_t> object_map,
                                        std::vector<Vec> matrices) {
    if (src->field() != dst->field()) throw Error(ErrorKind::FieldMismatch, "functor between categories over different fields");
    const std::size_t n = src->size();
    if (object_map.size() != n) throw Error(ErrorKind::ShapeMismatch, "object map must cover every source object");
    for (auto y : object_map)
      if (y >= dst->size()) throw Error(ErrorKind::ShapeMismatch, "object map points outside the target");
    if (matrices.size() != n * n) throw Error(ErrorKind::ShapeMismatch, "expected one matrix per ordered pair of objects");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (matrices[x * n + y].size() != dst->dim(object_map[x], object_map[y]) * src->dim(x, y))
          throw Error(ErrorKind::ShapeMismatch, "matrix for (" + src->object(x) + "," + src->object(y) + ") has the wrong size");
    BasicLinFunctor f;
    f.src_ = std::move(src);
    f.dst_ = std::move(dst);
    f.map_ = std::move(object_map);
    f.mats_ = std::move(matrices);
    return f;
  }

  static BasicLinFunctor identity(CatPtr<S> c) {
    const std::size_t n = c->size();
    std::vector<std::size_t> map(n);
    std::vector<Vec> mats;
    for (std::size_t x = 0; x < n; ++x) map[x] = x;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t d = c->dim(x, y);
        Vec m(d * d, c->zero());
        for (std::size_t i = 0; i < d; ++i) m[i * d + i] = c->one();
        mats.push_back(std::move(m));
      }
    return make_unchecked(c, c, std::move(map), std::move(mats));
  }

  const BasicLinCat<S>& src() const { return *src_; }
  const BasicLinCat<S>& dst() const { return *dst_; }
  const CatPtr<S>& src_ptr() const noexcept { return src_; }
  const CatPtr<S>& dst_ptr() const noexcept { return dst_; }
  const std::vector<std::size_t>& object_map() const noexcept { return map_; }
  std::size_t object(std::size_t x) const { return map_[x]; }
  const Vec& matrix(std::size_t x, std::size_t y) const { return mats_[x * src_->size() + y]; }
  const std::vector<Vec>& matrices() const noexcept { return mats_; }

  /// f_{xy}(v) for v ∈ C(x,y).
  Vec apply(std::size_t x, std::size_t y, std::span<const S> v) const {
    const std::size_t rows = dst_->dim(map_[x], map_[y]), cols = src_->dim(x, y);
    const Vec& m = matrix(x, y);
    Vec r(rows, dst_->zero());
    for (std::size_t j = 0; j < cols; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows; ++i)
        if (!m[i * cols + j].is_zero()) r[i] += m[i * cols + j] * v[j];
    }
    return r;
  }

  /// Residuals of Fct (x,y,z,j,k,i): f(e_j;e_k) = f(e_j);f(e_k), and of FctId (x,i): f(1_x) = 1_{fx}.
  std::vector<Violation> violations(std::size_t limit = std::numeric_limits<std::size_t>::max()) const {
    std::vector<Violation> out;
    const auto& C = *src_;
    const auto& D = *dst_;
    const std::size_t n = C.size();
    for (std::size_t x = 0; x < n && out.size() < limit; ++x) {
      const Vec fu = apply(x, x, C.unit(x));
      const Vec& u = D.unit(map_[x]);
      for (std::size_t i = 0; i < fu.size() && out.size() < limit; ++i) {
        const S r = fu[i] - u[i];
        if (!r.is_zero()) out.push_back({"FctId", {x, i + 1}, r.to_string()});
      }
    }
    for (std::size_t x = 0; x < n && out.size() < limit; ++x)
      for (std::size_t y = 0; y < n && out.size() < limit; ++y)
        for (std::size_t z = 0; z < n && out.size() < limit; ++z) {
          const std::size_t fx = map_[x], fy = map_[y], fz = map_[z];
          for (std::size_t j = 0; j < C.dim(x, y) && out.size() < limit; ++j) {
            const Vec fj = apply(x, y, C.basis_vector(x, y, j));
            for (std::size_t k = 0; k < C.dim(y, z) && out.size() < limit; ++k) {
              const Vec lhs = apply(x, z, C.compose(x, y, z, C.basis_vector(x, y, j), C.basis_vector(y, z, k)));
              const Vec rhs = D.compose(fx, fy, fz, fj, apply(y, z, C.basis_vector(y, z, k)));
              for (std::size_t i = 0; i < lhs.size() && out.size() < limit; ++i) {
                const S r = lhs[i] - rhs[i];
                if (!r.is_zero()) out.push_back({"Fct", {x, y, z, j + 1, k + 1, i + 1}, r.to_string()});
              }
            }
          }
        }
    return out;
  }

  bool is_valid() const { return violations(1).empty(); }

  friend bool operator==(const BasicLinFunctor& a, const BasicLinFunctor& b) {
    return *a.src_ == *b.src_ && *a.dst_ == *b.dst_ && a.map_ == b.map_ && a.mats_ == b.mats_;
  }

 private:
  CatPtr<S> src_;
  CatPtr<S> dst_;
  std::vector<std::size_t> map_;
  std::vector<Vec> mats_;
};

using LinFunctor = BasicLinFunctor<Scalar>;
using DualLinFunctor = BasicLinFunctor<Dual>;

/// "f then g": x ↦ g(f(x)), matrices multiply as g_{fx,fy} · f_{xy}.
template <class S>
BasicLinFunctor<S> compose(const BasicLinFunctor<S>& f, const BasicLinFunctor<S>& g) {
  if (!(f.dst() == g.src())) throw Error(ErrorKind::NotComposable, "target of the first functor is not the source of the second");
  const auto& C = f.src();
  const std::size_t n = C.size();
  std::vector<std::size_t> map(n);
  for (std::size_t x = 0; x < n; ++x) map[x] = g.object(f.object(x));
  std::vector<std::vector<S>> mats;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t cols = C.dim(x, y), rows = g.dst().dim(map[x], map[y]);
      std::vector<S> m(rows * cols, C.zero());
      for (std::size_t j = 0; j < cols; ++j) {
        const auto col = g.apply(f.object(x), f.object(y), f.apply(x, y, C.basis_vector(x, y, j)));
        for (std::size_t i = 0; i < rows; ++i) m[i * cols + j] = col[i];
      }
      mats.push_back(std::move(m));
    }
  return BasicLinFunctor<S>::make(f.src_ptr(), g.dst_ptr(), std::move(map), std::move(mats));
}

/// A natural transformation α: f ⇒ g with components α_x ∈ D(fx, gx).
template <class S>
class BasicNatTrans {
 public:
  using Vec = std::vector<S>;

  BasicNatTrans() = default;

  static BasicNatTrans make(BasicLinFunctor<S> f, BasicLinFunctor<S> g, std::vector<Vec> components) {
    BasicNatTrans a = make_unchecked(std::move(f), std::move(g), std::move(components));
    auto v = a.violations(64);
    if (!v.empty()) throw AxiomViolation(std::move(v));
    return a;
  }

  static BasicNatTrans make_unchecked(BasicLinFunctor<S> f, BasicLinFunctor<S> g, std::vector<Vec> components) {
    if (!(f.src() == g.src()) || !(f.dst() == g.dst()))
      throw Error(ErrorKind::ShapeMismatch, "natural transformation between functors with different source or target");
    if (components.size() != f.src().size()) throw Error(ErrorKind::ShapeMismatch, "one component per object required");
    for (std::size_t x = 0; x < components.size(); ++x)
      if (components[x].size() != f.dst().dim(f.object(x), g.object(x)))
        throw Error(ErrorKind::ShapeMismatch, "component at '" + f.src().object(x) + "' has the wrong length");
    BasicNatTrans a;
    a.f_ = std::move(f);
    a.g_ = std::move(g);
    a.comps_ = std::move(components);
    return a;
  }

  static BasicNatTrans identity(const BasicLinFunctor<S>& f) {
    std::vector<Vec> comps;
    for (std::size_t x = 0; x < f.src().size(); ++x) comps.push_back(f.dst().unit(f.object(x)));
    return make_unchecked(f, f, std::move(comps));
  }

  const BasicLinFunctor<S>& source() const noexcept { return f_; }
  const BasicLinFunctor<S>& target() const noexcept { return g_; }
  const Vec& component(std::size_t x) const { return comps_[x]; }
  const std::vector<Vec>& components() const noexcept { return comps_; }

  /// Residuals of TN (x,y,i,k): α_x ; g(e_i) = f(e_i) ; α_y for e_i ∈ C(x,y), coordinate k.
  std::vector<Violation> violations(std::size_t limit = std::numeric_limits<std::size_t>::max()) const {
    std::vector<Violation> out;
    const auto& C = f_.src();
    const auto& D = f_.dst();
    const std::size_t n = C.size();
    for (std::size_t x = 0; x < n && out.size() < limit; ++x)
      for (std::size_t y = 0; y < n && out.size() < limit; ++y)
        for (std::size_t i = 0; i < C.dim(x, y) && out.size() < limit; ++i) {
          const Vec e = C.basis_vector(x, y, i);
          const Vec lhs = D.compose(f_.object(x), g_.object(x), g_.object(y), comps_[x], g_.apply(x, y, e));
          const Vec rhs = D.compose(f_.object(x), f_.object(y), g_.object(y), f_.apply(x, y, e), comps_[y]);
          for (std::size_t k = 0; k < lhs.size() && out.size() < limit; ++k) {
            const S r = lhs[k] - rhs[k];
            if (!r.is_zero()) out.push_back({"TN", {x, y, i + 1, k + 1}, r.to_string()});
          }
        }
    return out;
  }

  bool is_valid() const { return violations(1).empty(); }

  friend bool operator==(const BasicNatTrans& a, const BasicNatTrans& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.comps_ == b.comps_;
  }

 private:
  BasicLinFunctor<S> f_;
  BasicLinFunctor<S> g_;
  std::vector<Vec> comps_;
};

using NatTrans = BasicNatTrans<Scalar>;
using DualNatTrans = BasicNatTrans<Dual>;

/// α: f ⇒ g followed by β: g ⇒ h, componentwise α_x ; β_x.
template <class S>
BasicNatTrans<S> vertical_compose(const BasicNatTrans<S>& alpha, const BasicNatTrans<S>& beta) {
  if (!(alpha.target() == beta.source()))
    throw Error(ErrorKind::NotComposable, "target functor of the first transformation differs from the source of the second");
  const auto& f = alpha.source();
  const auto& h = beta.target();
  std::vector<std::vector<S>> comps;
  for (std::size_t x = 0; x < f.src().size(); ++x)
    comps.push_back(f.dst().compose(f.object(x), alpha.target().object(x), h.object(x), alpha.component(x), beta.component(x)));
  return BasicNatTrans<S>::make(f, h, std::move(comps));
}

}  // namespace lincat

#endif  // LINCAT_FUNCTOR_HPP
