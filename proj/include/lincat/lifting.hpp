#ifndef LINCAT_LIFTING_HPP
#define LINCAT_LIFTING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/constructions.hpp"
#include "lincat/dual.hpp"

namespace lincat {

/// Ring operations over k[ε] used by the lifting formulas. `reduce`
/// returns the ε = 0 part as a plain scalar vector for comparisons.
struct DualMatrixRing {
  Field field;
  std::size_t n;

  using Element = DualMatrix;
  Element one() const { return DualMatrix::identity(field, n); }
  Element zero() const { return DualMatrix(field, n, n); }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element scale(std::int64_t s, const Element& a) const { return Dual{field.from_int(s), field.zero()} * a; }
  Matrix reduce(const Element& a) const { return a.constant_part(); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
};

/// A one-object category over k[ε] read as an algebra, with a·b = a;b.
struct DualAlgebraRing {
  const DualLinCat* algebra;

  using Element = DualVector;
  std::size_t dim() const { return algebra->dim(0, 0); }
  Element one() const { return algebra->unit(0); }
  Element zero() const { return algebra->zeros(dim()); }
  Element mul(const Element& a, const Element& b) const { return algebra->compose(0, 0, 0, a, b); }
  Element add(const Element& a, const Element& b) const {
    Element r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
  }
  Element scale(std::int64_t s, const Element& a) const {
    const Dual d{algebra->field().from_int(s), algebra->field().zero()};
    Element r = a;
    for (auto& x : r) x = d * x;
    return r;
  }
  Vector reduce(const Element& a) const { return constant_part(a); }
  bool is_zero(const Element& a) const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
};

/// q = p + k with e = p² − p and k = e(1 − 2p)(1 − 4e). Requires p² ≡ p
/// modulo ε; then q² = q exactly, q ≡ p and k commutes with p.
template <class Ring>
typename Ring::Element lift_idempotent_in(const Ring& R, const typename Ring::Element& p) {
  const auto e = R.sub(R.mul(p, p), p);
  if (R.reduce(e) != R.reduce(R.zero())) throw Error(ErrorKind::NotIdempotentModEps, "p² − p has a nonzero constant part");
  const auto k = R.mul(R.mul(e, R.sub(R.one(), R.scale(2, p))), R.sub(R.one(), R.scale(4, e)));
  const auto q = R.add(p, k);
  if (!R.is_zero(R.sub(R.mul(q, q), q)) || !R.is_zero(R.sub(R.mul(k, p), R.mul(p, k))))
    throw std::logic_error("lifted idempotent failed its exact re-check");
  return q;
}

inline DualMatrix lift_idempotent(const DualMatrix& p) {
  if (p.rows() != p.cols()) throw Error(ErrorKind::ShapeMismatch, "idempotents are square");
  return lift_idempotent_in(DualMatrixRing{p.field(), p.rows()}, p);
}

inline DualVector lift_idempotent(const DualLinCat& algebra, const DualVector& p) {
  if (algebra.size() != 1) throw Error(ErrorKind::BadParams, "lifting needs a one-object category");
  return lift_idempotent_in(DualAlgebraRing{&algebra}, p);
}

/// How the (i+1)-th lift is made orthogonal to Q = q_1 + … + q_i before
/// re-idempotizing: OneSided uses q′ − Q q′, TwoSided uses (1 − Q) q′ (1 − Q).
/// Only TwoSided is guaranteed to yield an orthogonal family.
enum class FamilyCorrection { TwoSided, OneSided };

/// The family produced by the correction, without the final exact check.
template <class Ring>
std::vector<typename Ring::Element> lift_family_candidate(const Ring& R, const std::vector<typename Ring::Element>& lifts,
                                                          FamilyCorrection mode = FamilyCorrection::TwoSided) {
  std::vector<typename Ring::Element> out;
  if (lifts.empty()) return out;
  auto Q = R.zero();
  for (std::size_t i = 0; i + 1 < lifts.size(); ++i) {
    auto c = lifts[i];
    if (i > 0) {
      const auto rest = R.sub(R.one(), Q);
      c = mode == FamilyCorrection::TwoSided ? R.mul(R.mul(rest, c), rest) : R.mul(rest, c);
    }
    auto q = lift_idempotent_in(R, c);
    if (mode == FamilyCorrection::TwoSided && (!R.is_zero(R.mul(Q, q)) || !R.is_zero(R.mul(q, Q))))
      throw std::logic_error("corrected lift is not orthogonal to the previous ones");
    out.push_back(q);
    Q = R.add(Q, q);
  }
  out.push_back(R.sub(R.one(), Q));
  return out;
}

/// Exact residuals of a family over k[ε]: squares, pairwise products, sum.
template <class Ring>
std::vector<Violation> dual_family_violations(const Ring& R, const std::vector<typename Ring::Element>& q) {
  std::vector<Violation> out;
  auto sum = R.zero();
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum = R.add(sum, q[i]);
    for (std::size_t j = 0; j < q.size(); ++j) {
      const auto p = R.mul(q[i], q[j]);
      if (i == j && !R.is_zero(R.sub(p, q[i]))) out.push_back({"Idempotent", {i, j}, "q² ≠ q"});
      if (i != j && !R.is_zero(p)) out.push_back({"Orthogonal", {i, j}, "q_i q_j ≠ 0"});
    }
  }
  if (!R.is_zero(R.sub(sum, R.one()))) out.push_back({"Complete", {}, "Σ q ≠ 1"});
  return out;
}

/// Lifts a family whose reductions are complete and orthogonal to an exact
/// complete orthogonal idempotent family over k[ε], congruent mod ε.
template <class Ring>
std::vector<typename Ring::Element> lift_orthogonal_family_in(const Ring& R, const std::vector<typename Ring::Element>& lifts) {
  // the reductions must already be a complete orthogonal family
  auto red_sum = R.zero();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    red_sum = R.add(red_sum, lifts[i]);
    for (std::size_t j = 0; j < lifts.size(); ++j) {
      const auto p = R.mul(lifts[i], lifts[j]);
      const auto target = i == j ? lifts[i] : R.zero();
      if (R.reduce(p) != R.reduce(target))
        throw Error(ErrorKind::InvalidFamily, "reductions are not orthogonal idempotents at (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ")");
    }
  }
  if (lifts.empty() || R.reduce(red_sum) != R.reduce(R.one())) throw Error(ErrorKind::InvalidFamily, "reductions do not sum to 1");
  auto q = lift_family_candidate(R, lifts, FamilyCorrection::TwoSided);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (R.reduce(q[i]) != R.reduce(lifts[i])) throw std::logic_error("lift changed the reduction");
  if (!dual_family_violations(R, q).empty()) throw std::logic_error("lifted family failed its exact re-check");
  return q;
}

inline BasicIdempotentFamily<Dual> lift_orthogonal_family(const DualLinCat& algebra, const BasicIdempotentFamily<Dual>& lifts) {
  if (algebra.size() != 1) throw Error(ErrorKind::BadParams, "lifting needs a one-object category");
  return {lift_orthogonal_family_in(DualAlgebraRing{&algebra}, lifts.elements)};
}

inline std::vector<DualMatrix> lift_orthogonal_family(const std::vector<DualMatrix>& lifts) {
  if (lifts.empty()) throw Error(ErrorKind::InvalidFamily, "empty family");
  for (const auto& p : lifts)
    if (p.rows() != p.cols() || p.rows() != lifts.front().rows()) throw Error(ErrorKind::ShapeMismatch, "family of square matrices of one size");
  return lift_orthogonal_family_in(DualMatrixRing{lifts.front().field(), lifts.front().rows()}, lifts);
}

/// Same, starting from a family of the reduction embedded with zero ε-part.
inline BasicIdempotentFamily<Dual> lift_orthogonal_family(const DualLinCat& algebra, const IdempotentFamily& reduction) {
  BasicIdempotentFamily<Dual> lifts;
  for (const auto& p : reduction.elements) lifts.elements.push_back(embed(p));
  return lift_orthogonal_family(algebra, lifts);
}

/// A projector q of D lifting the idempotent p of D/ε; the D-module D·q
/// reduces to the module presented by p.
inline DualVector lift_projective_presentation(const DualLinCat& d, const Vector& p) {
  if (d.size() != 1) throw Error(ErrorKind::BadParams, "lifting needs a one-object category");
  const LinCat c = reduce_mod_eps(d);
  if (p.size() != c.dim(0, 0)) throw Error(ErrorKind::ShapeMismatch, "projector has the wrong length");
  if (c.compose(0, 0, 0, p, p) != p) throw Error(ErrorKind::NotIdempotent, "p is not idempotent over the reduction");
  return lift_idempotent(d, embed(p));
}

}  // namespace lincat

#endif  // LINCAT_LIFTING_HPP
