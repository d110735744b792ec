#ifndef LINCAT_HOCHSCHILD_HPP
#define LINCAT_HOCHSCHILD_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/functor.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// Canonical basis of HC^n(C) = ⊕_{x_0..x_n} Hom(C(x_0,x_1)⊗…⊗C(x_{n−1},x_n), C(x_0,x_n)).
///
/// Blocks are object tuples in lexicographic order; inside a block the
/// coordinate of (i_1..i_n; k) is offset + flat(i_1..i_n)·d(x_0,x_n) + k with
/// i_1 most significant. For n = 0 the block of x is C(x,x) itself. For
/// n = 2 a block has exactly the layout of the structure tensor m_{xyz}.
class CochainSpace {
 public:
  struct Block {
    std::vector<std::size_t> objects;
    std::size_t offset = 0;
    std::size_t inputs = 1;  // ∏ d(x_{j−1}, x_j)
    std::size_t out = 0;     // d(x_0, x_n)
    std::size_t size() const { return inputs * out; }
  };

  CochainSpace() = default;

  CochainSpace(const LinCat& c, std::size_t degree) : n_(degree), objects_(c.size()) {
    const std::size_t len = degree + 1;
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= objects_;
    std::vector<std::size_t> t(len, 0);
    std::size_t offset = 0;
    for (std::size_t b = 0; b < count; ++b) {
      Block blk;
      blk.objects = t;
      blk.offset = offset;
      for (std::size_t j = 1; j < len; ++j) blk.inputs *= c.dim(t[j - 1], t[j]);
      blk.out = c.dim(t.front(), t.back());
      offset += blk.size();
      blocks_.push_back(std::move(blk));
      for (std::size_t j = len; j-- > 0;) {
        if (++t[j] < objects_) break;
        t[j] = 0;
      }
    }
    dim_ = offset;
  }

  std::size_t degree() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  std::size_t block_id(std::span<const std::size_t> objs) const {
    std::size_t id = 0;
    for (auto x : objs) id = id * objects_ + x;
    return id;
  }

  const Block& block(std::span<const std::size_t> objs) const { return blocks_[block_id(objs)]; }

 private:
  std::size_t n_ = 0;
  std::size_t objects_ = 0;
  std::size_t dim_ = 0;
  std::vector<Block> blocks_;
};

/// A Hochschild cochain: its degree and coordinates in the canonical basis.
struct Cochain {
  std::size_t degree = 0;
  Vector coords;
};

struct HochschildOptions {
  std::size_t max_degree = 4;
};

namespace detail {

inline void check_degree(std::size_t n, const HochschildOptions& opt) {
  if (n > opt.max_degree)
    throw Error(ErrorKind::DegreeTooLarge, "degree " + std::to_string(n) + " exceeds the cap " + std::to_string(opt.max_degree));
}

inline std::size_t flat_index(const LinCat& c, std::span<const std::size_t> objs, std::span<const std::size_t> multi) {
  std::size_t f = 0;
  for (std::size_t j = 0; j < multi.size(); ++j) f = f * c.dim(objs[j], objs[j + 1]) + multi[j];
  return f;
}

}  // namespace detail

/// d: HC^n → HC^{n+1} as a sparse matrix, with
/// (df)(c_1,…,c_{n+1}) = c_1;f(c_2,…) + Σ_j (−1)^j f(…, c_j;c_{j+1}, …) + (−1)^{n+1} f(c_1,…,c_n);c_{n+1}.
inline SparseMatrix differential_sparse(const LinCat& c, std::size_t n, const HochschildOptions& opt = {}) {
  detail::check_degree(n, opt);
  const CochainSpace src(c, n), dst(c, n + 1);
  const Field& F = c.field();
  SparseMatrix D(F, dst.dim(), src.dim());
  const Scalar one = F.one(), minus = -F.one();
  std::vector<std::size_t> multi(n + 1), sub_objs, sub_multi;
  for (const auto& blk : dst.blocks()) {
    if (blk.size() == 0) continue;
    const auto& x = blk.objects;  // x_0 .. x_{n+1}
    std::fill(multi.begin(), multi.end(), 0);
    for (std::size_t flat = 0; flat < blk.inputs; ++flat) {
      const std::size_t row = blk.offset + flat * blk.out;
      {  // c_1 ; f(c_2, …, c_{n+1})
        sub_objs.assign(x.begin() + 1, x.end());
        sub_multi.assign(multi.begin() + 1, multi.end());
        const auto& b = src.block(sub_objs);
        const std::size_t base = b.offset + detail::flat_index(c, sub_objs, sub_multi) * b.out;
        for (std::size_t kp = 0; kp < b.out; ++kp)
          for (const auto& [k, v] : c.basis_product(x[0], x[1], x[n + 1], multi[0], kp)) D.add(row + k, base + kp, v);
      }
      for (std::size_t j = 1; j <= n; ++j) {  // (−1)^j f(…, c_j ; c_{j+1}, …)
        sub_objs.assign(x.begin(), x.end());
        sub_objs.erase(sub_objs.begin() + static_cast<std::ptrdiff_t>(j));
        const auto& b = src.block(sub_objs);
        const Scalar& sign = j % 2 == 0 ? one : minus;
        for (const auto& [l, v] : c.basis_product(x[j - 1], x[j], x[j + 1], multi[j - 1], multi[j])) {
          sub_multi.assign(multi.begin(), multi.end());
          sub_multi[j - 1] = l;
          sub_multi.erase(sub_multi.begin() + static_cast<std::ptrdiff_t>(j));
          const std::size_t base = b.offset + detail::flat_index(c, sub_objs, sub_multi) * b.out;
          const Scalar sv = sign * v;
          for (std::size_t k = 0; k < blk.out; ++k) D.add(row + k, base + k, sv);
        }
      }
      {  // (−1)^{n+1} f(c_1, …, c_n) ; c_{n+1}
        sub_objs.assign(x.begin(), x.end() - 1);
        sub_multi.assign(multi.begin(), multi.end() - 1);
        const auto& b = src.block(sub_objs);
        const std::size_t base = b.offset + detail::flat_index(c, sub_objs, sub_multi) * b.out;
        const Scalar& sign = (n + 1) % 2 == 0 ? one : minus;
        for (std::size_t kp = 0; kp < b.out; ++kp)
          for (const auto& [k, v] : c.basis_product(x[0], x[n], x[n + 1], kp, multi[n])) D.add(row + k, base + kp, sign * v);
      }
      for (std::size_t j = n + 1; j-- > 0;) {
        if (++multi[j] < c.dim(x[j], x[j + 1])) break;
        multi[j] = 0;
      }
    }
  }
  D.finalize();
  return D;
}

inline Matrix differential_matrix(const LinCat& c, std::size_t n, const HochschildOptions& opt = {}) {
  return differential_sparse(c, n, opt).dense();
}

/// d(f) for a cochain f.
inline Cochain differential(const LinCat& c, const Cochain& f, const HochschildOptions& opt = {}) {
  const SparseMatrix d = differential_sparse(c, f.degree, opt);
  if (f.coords.size() != d.cols()) throw Error(ErrorKind::ShapeMismatch, "cochain has the wrong number of coordinates");
  return {f.degree + 1, d.apply(f.coords)};
}

struct CohomologyReport {
  std::size_t degree = 0;
  std::size_t dim_cochains = 0;
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::size_t dim_hh = 0;
  Subspace cocycles;
  Subspace coboundaries;
};

/// Kernel of `next` modulo the image of `prev`; throws std::logic_error when next·prev ≠ 0.
inline CohomologyReport cohomology_from(std::size_t degree, std::size_t dim, const std::optional<SparseMatrix>& prev,
                                        const SparseMatrix& next) {
  CohomologyReport r;
  r.degree = degree;
  r.dim_cochains = dim;
  if (prev && !(next * *prev).is_zero()) throw std::logic_error("d∘d ≠ 0 in degree " + std::to_string(degree));
  r.cocycles = kernel(next);
  r.coboundaries = prev ? image(*prev) : Subspace(next.field(), dim);
  r.dim_cocycles = r.cocycles.dim();
  r.dim_coboundaries = r.coboundaries.dim();
  r.dim_hh = r.dim_cocycles - r.dim_coboundaries;
  return r;
}

/// HH^n(C) with bases of cocycles and coboundaries. The identity d∘d = 0 is
/// re-checked on the two differentials involved.
inline CohomologyReport cohomology(const LinCat& c, std::size_t n, const HochschildOptions& opt = {}) {
  detail::check_degree(n, opt);
  const SparseMatrix next = differential_sparse(c, n, opt);
  std::optional<SparseMatrix> prev;
  if (n > 0) prev = differential_sparse(c, n - 1, opt);
  return cohomology_from(n, CochainSpace(c, n).dim(), prev, next);
}

/// The law m + εμ over k[ε] with units 1_x − μ(1_x,1_x)ε, without any check.
/// The unit correction is what makes non-normalized cocycles unital.
inline DualLinCat deformed_law(const LinCat& c, const Vector& mu) {
  const CochainSpace s(c, 2);
  if (mu.size() != s.dim()) throw Error(ErrorKind::ShapeMismatch, "2-cochain has the wrong number of coordinates");
  const std::size_t n = c.size();
  std::vector<DualVector> mult;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const std::vector<std::size_t> t{x, y, z};
        const auto& b = s.block(t);
        const Vector eps(mu.begin() + static_cast<std::ptrdiff_t>(b.offset),
                         mu.begin() + static_cast<std::ptrdiff_t>(b.offset + b.size()));
        mult.push_back(to_dual(c.tensor(x, y, z), eps));
      }
  std::vector<DualVector> units;
  for (std::size_t x = 0; x < n; ++x) {
    const std::vector<std::size_t> t{x, x, x};
    const auto& b = s.block(t);
    const std::size_t d = c.dim(x, x);
    Vector corr = zeros(c.field(), d);
    const Vector& u = c.unit(x);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (u[i].is_zero() || u[j].is_zero()) continue;
        const Scalar w = u[i] * u[j];
        for (std::size_t k = 0; k < d; ++k) corr[k] -= w * mu[b.offset + (i * d + j) * d + k];
      }
    units.push_back(to_dual(u, corr));
  }
  return DualLinCat::make_unchecked(c.field(), c.graph(), std::move(mult), std::move(units));
}

/// C[ε]_μ together with the cochain it came from.
struct DeformedCat {
  Cochain mu;
  DualLinCat law;
};

/// Accepts μ exactly when dμ = 0, and cross-checks that the deformed law
/// satisfies every Ass/Id equation over k[ε].
inline DeformedCat deform(const LinCat& c, const Cochain& mu, const HochschildOptions& opt = {}) {
  if (mu.degree != 2) throw Error(ErrorKind::ShapeMismatch, "a deformation needs a 2-cochain");
  const Cochain dmu = differential(c, mu, opt);
  DualLinCat law = deformed_law(c, mu.coords);
  const bool valid = law.is_valid();
  const bool cocycle = is_zero(dmu.coords);
  if (valid != cocycle) throw std::logic_error("cocycle test and deformed-law validation disagree");
  if (!cocycle) {
    std::size_t i = 0;
    while (dmu.coords[i].is_zero()) ++i;
    throw Error(ErrorKind::NotACocycle, "dμ has coordinate " + std::to_string(i) + " equal to " + dmu.coords[i].to_string());
  }
  return {mu, std::move(law)};
}

/// Result of trivialize: f with df = μ and the inverse pair of functors
/// `iso` = id + fε : C[ε]_μ → C[ε] and `inverse` = id − fε : C[ε] → C[ε]_μ.
struct Trivialization {
  bool trivial = false;
  Cochain f;
  DualLinFunctor iso;
  DualLinFunctor inverse;
};

namespace detail {

inline DualLinFunctor first_order_functor(const CatPtr<Dual>& src, const CatPtr<Dual>& dst, const LinCat& c, const Vector& f,
                                          const Scalar& sign) {
  const CochainSpace s(c, 1);
  const std::size_t n = c.size();
  std::vector<std::size_t> map(n);
  for (std::size_t x = 0; x < n; ++x) map[x] = x;
  std::vector<DualVector> mats;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::vector<std::size_t> t{x, y};
      const auto& b = s.block(t);
      const std::size_t d = c.dim(x, y);
      DualVector m(d * d, scalar_traits<Dual>::zero(c.field()));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) m[k * d + i] = Dual(i == k ? c.field().one() : c.field().zero(), sign * f[b.offset + i * d + k]);
      mats.push_back(std::move(m));
    }
  return DualLinFunctor::make(src, dst, std::move(map), std::move(mats));
}

}  // namespace detail

inline Trivialization trivialize(const LinCat& c, const Cochain& mu, const HochschildOptions& opt = {}) {
  const DeformedCat def = deform(c, mu, opt);
  Trivialization out;
  const SparseMatrix d1 = differential_sparse(c, 1, opt);
  auto f = solve(d1.dense(), mu.coords);
  if (!f) return out;
  if (d1.apply(*f) != mu.coords) throw std::logic_error("trivializing cochain failed its exact re-check");
  out.trivial = true;
  out.f = {1, std::move(*f)};
  auto deformed = share(def.law);
  auto trivial = share(extend_to_duals(c));
  out.iso = detail::first_order_functor(deformed, trivial, c, out.f.coords, c.field().one());
  out.inverse = detail::first_order_functor(trivial, deformed, c, out.f.coords, -c.field().one());
  if (!(compose(out.iso, out.inverse) == DualLinFunctor::identity(deformed)) ||
      !(compose(out.inverse, out.iso) == DualLinFunctor::identity(trivial)))
    throw std::logic_error("first-order functors are not mutually inverse");
  return out;
}

/// HZ^0 with the product table of its basis: table[a][b] holds the
/// coordinates of z_a · z_b (objectwise composition) in the same basis.
struct CenterReport {
  Subspace basis;
  std::vector<std::vector<Vector>> table;
};

inline Vector center_product(const LinCat& c, const Vector& a, const Vector& b) {
  const CochainSpace s(c, 0);
  Vector r = zeros(c.field(), s.dim());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const std::vector<std::size_t> t{x};
    const auto& blk = s.block(t);
    const std::size_t d = blk.out;
    const std::span<const Scalar> ax(a.data() + blk.offset, d), bx(b.data() + blk.offset, d);
    const Vector p = c.compose(x, x, x, ax, bx);
    for (std::size_t k = 0; k < d; ++k) r[blk.offset + k] = p[k];
  }
  return r;
}

inline CenterReport center(const LinCat& c) {
  CenterReport rep;
  rep.basis = kernel(differential_matrix(c, 0));
  for (const auto& za : rep.basis.basis()) {
    std::vector<Vector> row;
    for (const auto& zb : rep.basis.basis()) row.push_back(rep.basis.coordinates_or_throw(center_product(c, za, zb)));
    rep.table.push_back(std::move(row));
  }
  return rep;
}

/// HZ^1: derivations.
inline Subspace derivations(const LinCat& c) { return kernel(differential_matrix(c, 1)); }

/// HB^1: inner derivations u ↦ u;g_y − g_x;u.
inline Subspace inner_derivations(const LinCat& c) { return image(differential_matrix(c, 0)); }

/// For a 0-cochain g, the transformation 1 + gε from the identity of C[ε] to
/// the first-order automorphism id + (dg)ε.
inline DualNatTrans nat_iso_from_0cochain(const LinCat& c, const Cochain& g) {
  if (g.degree != 0 || g.coords.size() != CochainSpace(c, 0).dim())
    throw Error(ErrorKind::ShapeMismatch, "expected a 0-cochain");
  const Cochain dg = differential(c, g);
  auto ext = share(extend_to_duals(c));
  const DualLinFunctor id = DualLinFunctor::identity(ext);
  const DualLinFunctor target = detail::first_order_functor(ext, ext, c, dg.coords, c.field().one());
  const CochainSpace s(c, 0);
  std::vector<DualVector> comps;
  for (std::size_t x = 0; x < c.size(); ++x) {
    const std::vector<std::size_t> t{x};
    const auto& b = s.block(t);
    const Vector gx(g.coords.begin() + static_cast<std::ptrdiff_t>(b.offset),
                    g.coords.begin() + static_cast<std::ptrdiff_t>(b.offset + b.out));
    comps.push_back(to_dual(c.unit(x), gx));
  }
  return DualNatTrans::make(id, target, std::move(comps));
}

}  // namespace lincat

#endif  // LINCAT_HOCHSCHILD_HPP
