#ifndef LINCAT_KAROUBI_HPP
#define LINCAT_KAROUBI_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lincat/equivalence.hpp"
#include "lincat/functor.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// An object (X, p) of the additive hull: a tuple of base objects and an
/// idempotent block matrix p. Block (i,j) of p, at position i·|X| + j, is a
/// coordinate vector in C(x_i, x_j). The empty tuple is the zero object.
struct KaroubiObject {
  std::vector<std::size_t> tuple;
  std::vector<Vector> projector;

  static KaroubiObject unit(const LinCat& c, std::size_t x) { return {{x}, {c.unit(x)}}; }
  static KaroubiObject zero() { return {}; }

  /// (x, …, x) with the identity projector.
  static KaroubiObject power(const LinCat& c, std::size_t x, std::size_t n) {
    KaroubiObject o;
    o.tuple.assign(n, x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) o.projector.push_back(i == j ? c.unit(x) : c.zeros(c.dim(x, x)));
    return o;
  }

  friend bool operator==(const KaroubiObject&, const KaroubiObject&) = default;
};

/// Block matrices between tuples, flattened with blocks (i,j) in
/// lexicographic order; composition is f;g blockwise.
class BlockSpace {
 public:
  BlockSpace(const LinCat& c, std::vector<std::size_t> src, std::vector<std::size_t> dst)
      : c_(&c), src_(std::move(src)), dst_(std::move(dst)) {
    for (auto x : src_)
      for (auto y : dst_) {
        offsets_.push_back(dim_);
        dim_ += c.dim(x, y);
      }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t offset(std::size_t i, std::size_t j) const { return offsets_[i * dst_.size() + j]; }

  Vector flatten(const std::vector<Vector>& blocks) const {
    Vector v;
    v.reserve(dim_);
    for (std::size_t b = 0; b < blocks.size(); ++b) v.insert(v.end(), blocks[b].begin(), blocks[b].end());
    return v;
  }

  /// f;g with f ∈ a, g ∈ b and the result in ab.
  static Vector compose(const BlockSpace& a, const BlockSpace& b, const BlockSpace& ab, std::span<const Scalar> f,
                        std::span<const Scalar> g) {
    const LinCat& c = *a.c_;
    Vector r = zeros(c.field(), ab.dim_);
    for (std::size_t i = 0; i < a.src_.size(); ++i)
      for (std::size_t j = 0; j < a.dst_.size(); ++j)
        for (std::size_t k = 0; k < b.dst_.size(); ++k) {
          const std::size_t x = a.src_[i], y = a.dst_[j], z = b.dst_[k];
          const std::span<const Scalar> fij = f.subspan(a.offset(i, j), c.dim(x, y));
          const std::span<const Scalar> gjk = g.subspan(b.offset(j, k), c.dim(y, z));
          const Vector p = c.compose(x, y, z, fij, gjk);
          axpy(c.field().one(), p, std::span<Scalar>(r).subspan(ab.offset(i, k), c.dim(x, z)));
        }
    return r;
  }

 private:
  const LinCat* c_;
  std::vector<std::size_t> src_, dst_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

/// A finite set of objects of the Karoubi envelope and the linear category
/// they span. Hom((X,p),(Y,q)) = p;Block(X,Y);q with an echelonized basis
/// (`homs[i·n + j]`, in flattened block coordinates); realized objects are
/// named K0, K1, …
struct KaroubiFragment {
  LinCat base;
  std::vector<KaroubiObject> objects;
  std::vector<Subspace> homs;
  LinCat realized;

  std::optional<std::size_t> find(const KaroubiObject& o) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == o) return i;
    return std::nullopt;
  }

  /// The realized morphism i → j as a block matrix.
  Vector to_blocks(std::size_t i, std::size_t j, std::span<const Scalar> coords) const {
    return homs[i * objects.size() + j].combine(coords);
  }
};

namespace detail {

inline BlockSpace block_space(const LinCat& c, const KaroubiObject& a, const KaroubiObject& b) {
  return BlockSpace(c, a.tuple, b.tuple);
}

inline void check_karoubi_object(const LinCat& c, const KaroubiObject& o, std::size_t index) {
  const std::size_t n = o.tuple.size();
  for (auto x : o.tuple)
    if (x >= c.size()) throw Error(ErrorKind::ShapeMismatch, "object " + std::to_string(index) + " names a missing base object");
  if (o.projector.size() != n * n) throw Error(ErrorKind::ShapeMismatch, "projector of object " + std::to_string(index) + " has the wrong block count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (o.projector[i * n + j].size() != c.dim(o.tuple[i], o.tuple[j]))
        throw Error(ErrorKind::ShapeMismatch, "projector block has the wrong size in object " + std::to_string(index));
  const BlockSpace s = block_space(c, o, o);
  const Vector p = s.flatten(o.projector);
  if (BlockSpace::compose(s, s, s, p, p) != p) throw Error(ErrorKind::NotIdempotent, "projector of object " + std::to_string(index));
}

}  // namespace detail

inline KaroubiFragment build_fragment(const LinCat& c, std::vector<KaroubiObject> objs) {
  for (std::size_t i = 0; i < objs.size(); ++i) detail::check_karoubi_object(c, objs[i], i);
  const std::size_t n = objs.size();
  KaroubiFragment frag{c, std::move(objs), {}, {}};
  const auto& O = frag.objects;
  std::vector<Vector> proj;
  for (const auto& o : O) proj.push_back(detail::block_space(c, o, o).flatten(o.projector));
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BlockSpace pp = detail::block_space(c, O[i], O[i]), s = detail::block_space(c, O[i], O[j]),
                       qq = detail::block_space(c, O[j], O[j]);
      std::vector<Vector> gens;
      for (std::size_t t = 0; t < s.dim(); ++t) {
        const Vector e = unit_vector(c.field(), s.dim(), t);
        gens.push_back(BlockSpace::compose(s, qq, s, BlockSpace::compose(pp, s, s, proj[i], e), proj[j]));
      }
      frag.homs.push_back(Subspace::span(c.field(), s.dim(), gens));
      dims.push_back(frag.homs.back().dim());
    }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("K" + std::to_string(i));
  std::vector<Vector> mult;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Subspace &hij = frag.homs[i * n + j], &hjk = frag.homs[j * n + k], &hik = frag.homs[i * n + k];
        const BlockSpace a = detail::block_space(c, O[i], O[j]), b = detail::block_space(c, O[j], O[k]),
                         ab = detail::block_space(c, O[i], O[k]);
        Vector t;
        t.reserve(hij.dim() * hjk.dim() * hik.dim());
        for (const auto& u : hij.basis())
          for (const auto& v : hjk.basis()) {
            const Vector coords = hik.coordinates_or_throw(BlockSpace::compose(a, b, ab, u, v));
            t.insert(t.end(), coords.begin(), coords.end());
          }
        mult.push_back(std::move(t));
      }
  std::vector<Vector> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(frag.homs[i * n + i].coordinates_or_throw(proj[i]));
  frag.realized = LinCat::make(c.field(), GraphType(names, dims), std::move(mult), std::move(units));
  return frag;
}

/// x ↦ ((x), 1_x). Throws MissingUnits when some unit object is absent.
inline LinFunctor embed(const LinCat& c, const KaroubiFragment& frag) {
  std::vector<std::size_t> map;
  for (std::size_t x = 0; x < c.size(); ++x) {
    auto i = frag.find(KaroubiObject::unit(c, x));
    if (!i) throw Error(ErrorKind::MissingUnits, "fragment lacks ((" + c.object(x) + "), 1)");
    map.push_back(*i);
  }
  std::vector<Vector> mats;
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      const Subspace& h = frag.homs[map[x] * frag.objects.size() + map[y]];
      const std::size_t d = c.dim(x, y);
      Vector m(d * d, c.field().zero());
      for (std::size_t j = 0; j < d; ++j) {
        const Vector col = h.coordinates_or_throw(c.basis_vector(x, y, j));
        for (std::size_t i = 0; i < d; ++i) m[i * d + j] = col[i];
      }
      mats.push_back(std::move(m));
    }
  return LinFunctor::make(share(c), share(frag.realized), std::move(map), std::move(mats));
}

/// Image and kernel of a projector p of object o, both realized inside the
/// fragment: r: image → o and s: o → image with r;s = 1 and s;r = p, and
/// likewise for 1 − p through the kernel object.
struct ProjectorSplit {
  bool split = false;
  std::optional<std::size_t> image;
  std::optional<std::size_t> kernel;
  Vector image_r, image_s, kernel_r, kernel_s;
};

namespace detail {

inline std::optional<RetractionResult> split_through_some(const LinCat& r, std::size_t o, const Vector& p, const SearchOptions& opt,
                                                         std::size_t& index) {
  for (std::size_t j = 0; j < r.size(); ++j) {
    auto res = find_retraction(r, j, o, p, opt);
    if (res.outcome == SearchOutcome::Witness) {
      index = j;
      return res;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline ProjectorSplit split_projector(const KaroubiFragment& frag, std::size_t o, const Vector& p, const SearchOptions& opt = {}) {
  const LinCat& R = frag.realized;
  if (p.size() != R.dim(o, o)) throw Error(ErrorKind::ShapeMismatch, "projector has the wrong length");
  if (R.compose(o, o, o, p, p) != p) throw Error(ErrorKind::NotIdempotent, "p;p ≠ p");
  ProjectorSplit out;
  std::size_t j = 0;
  if (auto im = detail::split_through_some(R, o, p, opt, j)) {
    out.image = j;
    out.image_r = im->r;
    out.image_s = im->s;
  }
  const Vector q = sub(R.unit(o), p);
  if (auto ker = detail::split_through_some(R, o, q, opt, j)) {
    out.kernel = j;
    out.kernel_r = ker->r;
    out.kernel_s = ker->s;
  }
  out.split = out.image && out.kernel;
  if (out.split) {
    // biproduct identities
    const std::size_t a = *out.image, b = *out.kernel;
    const bool ok = R.compose(a, o, a, out.image_r, out.image_s) == R.unit(a) &&
                    R.compose(o, a, o, out.image_s, out.image_r) == p &&
                    R.compose(b, o, b, out.kernel_r, out.kernel_s) == R.unit(b) &&
                    R.compose(o, b, o, out.kernel_s, out.kernel_r) == q &&
                    lincat::is_zero(R.compose(a, o, b, out.image_r, out.kernel_s)) &&
                    lincat::is_zero(R.compose(b, o, a, out.kernel_r, out.image_s));
    if (!ok) throw std::logic_error("split witnesses fail the biproduct identities");
  }
  return out;
}

/// (X, p) ⊕ (Y, q) = (X ++ Y, diag(p, q)).
inline KaroubiObject direct_sum(const LinCat& c, const KaroubiObject& a, const KaroubiObject& b) {
  KaroubiObject s;
  s.tuple = a.tuple;
  s.tuple.insert(s.tuple.end(), b.tuple.begin(), b.tuple.end());
  const std::size_t n = a.tuple.size(), m = b.tuple.size(), N = n + m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (i < n && j < n)
        s.projector.push_back(a.projector[i * n + j]);
      else if (i >= n && j >= n)
        s.projector.push_back(b.projector[(i - n) * m + (j - n)]);
      else
        s.projector.push_back(c.zeros(c.dim(s.tuple[i], s.tuple[j])));
    }
  return s;
}

struct KaroubianReport {
  bool has_zero = false;
  bool has_biproducts = false;
  std::vector<std::pair<std::size_t, std::size_t>> missing_biproducts;
  std::vector<std::pair<std::size_t, Vector>> unsplit;  // (object, projector)
  std::size_t tested = 0;
  bool karoubian = false;
};

struct KaroubianOptions {
  std::size_t samples = 4;  // random conjugates of each idempotent basis element
  SearchOptions search = {};
};

/// Tests every projector among 0, 1, the idempotent basis elements of each
/// End(o) and their conjugates by random invertible elements; also looks
/// for a zero object and for every pairwise direct sum up to isomorphism.
inline KaroubianReport is_karoubian_within(const KaroubiFragment& frag, const KaroubianOptions& opt = {}) {
  KaroubianReport rep;
  const LinCat& R = frag.realized;
  const Field& F = R.field();
  const std::size_t n = R.size();
  for (std::size_t i = 0; i < n; ++i)
    if (R.dim(i, i) == 0) rep.has_zero = true;

  std::mt19937_64 rng(opt.search.seed);
  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t d = R.dim(o, o);
    std::vector<Vector> candidates{R.zeros(d), R.unit(o)};
    std::vector<Vector> idempotents;
    for (std::size_t i = 0; i < d; ++i) {
      const Vector e = R.basis_vector(o, o, i);
      if (R.compose(o, o, o, e, e) == e) idempotents.push_back(e);
    }
    candidates.insert(candidates.end(), idempotents.begin(), idempotents.end());
    for (std::size_t t = 0; t < opt.samples && !idempotents.empty(); ++t) {
      Vector u;
      for (std::size_t i = 0; i < d; ++i) u.push_back(detail::random_scalar(F, rng));
      auto inv = inverse_morphism(R, o, o, u);
      if (!inv) continue;
      for (const auto& e : idempotents) candidates.push_back(R.compose(o, o, o, R.compose(o, o, o, *inv, e), u));
    }
    std::vector<Vector> seen;
    for (const auto& p : candidates) {
      if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
      seen.push_back(p);
      ++rep.tested;
      if (!split_projector(frag, o, p, opt.search).split) rep.unsplit.emplace_back(o, p);
    }
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      auto objs = frag.objects;
      objs.push_back(direct_sum(frag.base, frag.objects[a], frag.objects[b]));
      const KaroubiFragment ext = build_fragment(frag.base, objs);
      bool found = false;
      for (std::size_t z = 0; z < n && !found; ++z)
        found = find_isomorphism(ext.realized, z, n, opt.search).outcome == SearchOutcome::Witness;
      if (!found) rep.missing_biproducts.emplace_back(a, b);
    }
  rep.has_biproducts = rep.missing_biproducts.empty();
  rep.karoubian = rep.has_zero && rep.has_biproducts && rep.unsplit.empty();
  return rep;
}

}  // namespace lincat

#endif  // LINCAT_KAROUBI_HPP
