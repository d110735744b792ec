#ifndef LINCAT_CONSTRUCTIONS_HPP
#define LINCAT_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// Elements p_1..p_n of a one-object category, in its coordinate basis.
template <class S>
struct BasicIdempotentFamily {
  std::vector<std::vector<S>> elements;
};

using IdempotentFamily = BasicIdempotentFamily<Scalar>;

/// Residual-style check that the family is complete and orthogonal:
/// p_i p_j = δ_ij p_i and Σ p_i = 1.
template <class S>
std::vector<Violation> family_violations(const BasicLinCat<S>& a, const BasicIdempotentFamily<S>& fam) {
  std::vector<Violation> out;
  if (a.size() != 1) {
    out.push_back({"OneObject", {a.size()}, "family needs a one-object category"});
    return out;
  }
  const std::size_t d = a.dim(0, 0);
  for (const auto& p : fam.elements)
    if (p.size() != d) {
      out.push_back({"Shape", {p.size(), d}, "element length differs from the algebra dimension"});
      return out;
    }
  for (std::size_t i = 0; i < fam.elements.size(); ++i)
    for (std::size_t j = 0; j < fam.elements.size(); ++j) {
      auto r = a.compose(0, 0, 0, fam.elements[i], fam.elements[j]);
      if (i == j)
        for (std::size_t k = 0; k < d; ++k) r[k] -= fam.elements[i][k];
      for (std::size_t k = 0; k < d; ++k)
        if (!r[k].is_zero()) out.push_back({i == j ? "Idempotent" : "Orthogonal", {i, j, k + 1}, r[k].to_string()});
    }
  auto sum = a.zeros(d);
  for (const auto& p : fam.elements)
    for (std::size_t k = 0; k < d; ++k) sum[k] += p[k];
  for (std::size_t k = 0; k < d; ++k) {
    const auto r = sum[k] - a.unit(0)[k];
    if (!r.is_zero()) out.push_back({"Complete", {k + 1}, r.to_string()});
  }
  return out;
}

template <class S>
void check_family(const BasicLinCat<S>& a, const BasicIdempotentFamily<S>& fam) {
  auto v = family_violations(a, fam);
  if (!v.empty()) throw Error(ErrorKind::InvalidFamily, describe(v.front()));
}

/// The one-object category [C] = ⊕_{x,y} C(x,y) with block-matrix product,
/// together with its idempotents id_x. Blocks are laid out in (x,y)
/// lexicographic order; `offset(x,y)` is the first coordinate of C(x,y).
template <class S>
struct BasicMatrixRing {
  BasicLinCat<S> algebra;
  BasicIdempotentFamily<S> family;
  std::vector<std::size_t> offsets;
  std::size_t objects = 0;

  std::size_t offset(std::size_t x, std::size_t y) const { return offsets[x * objects + y]; }
};

using MatrixRing = BasicMatrixRing<Scalar>;

template <class S>
BasicMatrixRing<S> matrix_ring(const BasicLinCat<S>& c) {
  const std::size_t n = c.size();
  BasicMatrixRing<S> out;
  out.objects = n;
  std::size_t total = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      out.offsets.push_back(total);
      total += c.dim(x, y);
    }
  std::vector<S> t(total * total * total, c.zero());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t i = 0; i < c.dim(x, y); ++i)
          for (std::size_t j = 0; j < c.dim(y, z); ++j)
            for (const auto& [k, v] : c.basis_product(x, y, z, i, j)) {
              const std::size_t I = out.offset(x, y) + i, J = out.offset(y, z) + j, K = out.offset(x, z) + k;
              t[(I * total + J) * total + K] = v;
            }
  std::vector<S> unit(total, c.zero());
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<S> p(total, c.zero());
    for (std::size_t i = 0; i < c.dim(x, x); ++i) {
      unit[out.offset(x, x) + i] = c.unit(x)[i];
      p[out.offset(x, x) + i] = c.unit(x)[i];
    }
    out.family.elements.push_back(std::move(p));
  }
  out.algebra = BasicLinCat<S>::make_unchecked(c.field(), GraphType({"0"}, {total}), {std::move(t)}, {std::move(unit)});
  return out;
}

/// Category with objects the members of a complete orthogonal idempotent
/// family and C(i,j) = p_i·D·p_j. `ambient[i*n + j]` holds the chosen
/// (echelonized) basis of p_i·D·p_j in the coordinates of D.
struct IdempotentCategory {
  LinCat category;
  std::vector<Subspace> ambient;
};

inline IdempotentCategory category_from_idempotents(const LinCat& a, const IdempotentFamily& fam,
                                                    std::vector<std::string> names = {}) {
  check_family(a, fam);
  const std::size_t n = fam.elements.size();
  const std::size_t d = a.dim(0, 0);
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  if (names.size() != n) throw Error(ErrorKind::BadParams, "one name per idempotent required");
  IdempotentCategory out;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Vector> gens;
      for (std::size_t k = 0; k < d; ++k) {
        const Vector pe = a.compose(0, 0, 0, fam.elements[i], a.basis_vector(0, 0, k));
        gens.push_back(a.compose(0, 0, 0, pe, fam.elements[j]));
      }
      out.ambient.push_back(Subspace::span(a.field(), d, gens));
      dims.push_back(out.ambient.back().dim());
    }
  GraphType g(names, dims);
  std::vector<Vector> mult;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Subspace& A = out.ambient[x * n + y];
        const Subspace& B = out.ambient[y * n + z];
        const Subspace& C = out.ambient[x * n + z];
        Vector t = zeros(a.field(), A.dim() * B.dim() * C.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
          for (std::size_t j = 0; j < B.dim(); ++j) {
            const Vector prod = a.compose(0, 0, 0, A.basis()[i], B.basis()[j]);
            const Vector coords = C.coordinates_or_throw(prod);
            for (std::size_t k = 0; k < C.dim(); ++k) t[(i * B.dim() + j) * C.dim() + k] = coords[k];
          }
        mult.push_back(std::move(t));
      }
  std::vector<Vector> units;
  for (std::size_t x = 0; x < n; ++x) units.push_back(out.ambient[x * n + x].coordinates_or_throw(fam.elements[x]));
  out.category = LinCat::make(a.field(), std::move(g), std::move(mult), std::move(units));
  return out;
}

/// C° with C°(x,y) = C(y,x) and a ;° b = b ; a.
template <class S>
BasicLinCat<S> opposite(const BasicLinCat<S>& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> dims(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) dims[x * n + y] = c.dim(y, x);
  std::vector<std::vector<S>> mult;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t dxy = c.dim(y, x), dyz = c.dim(z, y), dxz = c.dim(z, x);
        std::vector<S> t(dxy * dyz * dxz, c.zero());
        for (std::size_t i = 0; i < dxy; ++i)
          for (std::size_t j = 0; j < dyz; ++j)
            for (std::size_t k = 0; k < dxz; ++k) t[(i * dyz + j) * dxz + k] = c.coeff(z, y, x, j, i, k);
        mult.push_back(std::move(t));
      }
  return BasicLinCat<S>::make_unchecked(c.field(), GraphType(c.objects(), dims), std::move(mult), c.units());
}

/// Objects are pairs "x|y" (x outer), hom spaces and composition are Kronecker products.
template <class S>
BasicLinCat<S> tensor_product(const BasicLinCat<S>& c, const BasicLinCat<S>& d) {
  if (c.field() != d.field()) throw Error(ErrorKind::FieldMismatch, c.field().name() + " vs " + d.field().name());
  const std::size_t n = c.size(), m = d.size(), N = n * m;
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) names.push_back(c.object(x) + "|" + d.object(y));
  auto cx = [m](std::size_t X) { return X / m; };
  auto dx = [m](std::size_t X) { return X % m; };
  std::vector<std::size_t> dims(N * N);
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y) dims[X * N + Y] = c.dim(cx(X), cx(Y)) * d.dim(dx(X), dx(Y));
  std::vector<std::vector<S>> mult;
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y)
      for (std::size_t Z = 0; Z < N; ++Z) {
        const std::size_t a1 = cx(X), a2 = cx(Y), a3 = cx(Z), b1 = dx(X), b2 = dx(Y), b3 = dx(Z);
        const std::size_t dXY = dims[X * N + Y], dYZ = dims[Y * N + Z], dXZ = dims[X * N + Z];
        const std::size_t e12 = d.dim(b1, b2), e23 = d.dim(b2, b3), e13 = d.dim(b1, b3);
        std::vector<S> t(dXY * dYZ * dXZ, c.zero());
        for (std::size_t i = 0; i < c.dim(a1, a2); ++i)
          for (std::size_t j = 0; j < c.dim(a2, a3); ++j)
            for (const auto& [k, v] : c.basis_product(a1, a2, a3, i, j))
              for (std::size_t i2 = 0; i2 < e12; ++i2)
                for (std::size_t j2 = 0; j2 < e23; ++j2)
                  for (const auto& [k2, w] : d.basis_product(b1, b2, b3, i2, j2)) {
                    const std::size_t I = i * e12 + i2, J = j * e23 + j2, K = k * e13 + k2;
                    t[(I * dYZ + J) * dXZ + K] = v * w;
                  }
        mult.push_back(std::move(t));
      }
  std::vector<std::vector<S>> units;
  for (std::size_t X = 0; X < N; ++X) {
    const auto& u = c.unit(cx(X));
    const auto& w = d.unit(dx(X));
    std::vector<S> k(u.size() * w.size(), c.zero());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) k[i * w.size() + j] = u[i] * w[j];
    units.push_back(std::move(k));
  }
  return BasicLinCat<S>::make_unchecked(c.field(), GraphType(names, dims), std::move(mult), std::move(units));
}

/// Coproduct: no morphisms between the two parts. Object names must be distinct.
template <class S>
BasicLinCat<S> disjoint_union(const BasicLinCat<S>& c, const BasicLinCat<S>& d) {
  if (c.field() != d.field()) throw Error(ErrorKind::FieldMismatch, c.field().name() + " vs " + d.field().name());
  const std::size_t n = c.size(), N = n + d.size();
  std::vector<std::string> names = c.objects();
  names.insert(names.end(), d.objects().begin(), d.objects().end());
  auto side = [n](std::size_t X) { return X < n ? 0 : 1; };
  auto local = [n](std::size_t X) { return X < n ? X : X - n; };
  std::vector<std::size_t> dims(N * N, 0);
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y)
      if (side(X) == side(Y)) dims[X * N + Y] = side(X) == 0 ? c.dim(X, Y) : d.dim(local(X), local(Y));
  std::vector<std::vector<S>> mult;
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y)
      for (std::size_t Z = 0; Z < N; ++Z) {
        if (side(X) == side(Y) && side(Y) == side(Z)) {
          mult.push_back(side(X) == 0 ? c.tensor(X, Y, Z) : d.tensor(local(X), local(Y), local(Z)));
        } else {
          mult.push_back(std::vector<S>(dims[X * N + Y] * dims[Y * N + Z] * dims[X * N + Z], c.zero()));
        }
      }
  std::vector<std::vector<S>> units = c.units();
  units.insert(units.end(), d.units().begin(), d.units().end());
  return BasicLinCat<S>::make_unchecked(c.field(), GraphType(names, dims), std::move(mult), std::move(units));
}

template <class S>
BasicLinCat<S> rename_objects(const BasicLinCat<S>& c, std::vector<std::string> names) {
  if (names.size() != c.size()) throw Error(ErrorKind::BadParams, "one name per object required");
  return BasicLinCat<S>::make_unchecked(c.field(), GraphType(std::move(names), c.graph().dims), c.tensors(), c.units());
}

/// Full subcategory on the listed object positions, in the given order.
template <class S>
BasicLinCat<S> full_subcategory(const BasicLinCat<S>& c, const std::vector<std::size_t>& objs) {
  const std::size_t N = objs.size();
  std::vector<std::string> names;
  for (auto x : objs) names.push_back(c.object(x));
  std::vector<std::size_t> dims(N * N);
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y) dims[X * N + Y] = c.dim(objs[X], objs[Y]);
  std::vector<std::vector<S>> mult;
  for (std::size_t X = 0; X < N; ++X)
    for (std::size_t Y = 0; Y < N; ++Y)
      for (std::size_t Z = 0; Z < N; ++Z) mult.push_back(c.tensor(objs[X], objs[Y], objs[Z]));
  std::vector<std::vector<S>> units;
  for (auto x : objs) units.push_back(c.unit(x));
  return BasicLinCat<S>::make_unchecked(c.field(), GraphType(names, dims), std::move(mult), std::move(units));
}

}  // namespace lincat

#endif  // LINCAT_CONSTRUCTIONS_HPP
