#ifndef LINCAT_CATEGORY_HPP
#define LINCAT_CATEGORY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lincat/dual.hpp"
#include "lincat/error.hpp"
#include "lincat/matrix.hpp"

namespace lincat {

/// Objects and hom-space dimensions of a finite linear category.
struct GraphType {
  std::vector<std::string> objects;
  std::vector<std::size_t> dims;  // dims[x * n + y] = d(x, y)

  GraphType() = default;
  GraphType(std::vector<std::string> objs, std::vector<std::size_t> d) : objects(std::move(objs)), dims(std::move(d)) {
    if (dims.size() != objects.size() * objects.size())
      throw Error(ErrorKind::ShapeMismatch, "dimension table must have one entry per ordered pair of objects");
    for (std::size_t i = 0; i < objects.size(); ++i)
      for (std::size_t j = i + 1; j < objects.size(); ++j)
        if (objects[i] == objects[j]) throw Error(ErrorKind::BadParams, "duplicate object '" + objects[i] + "'");
  }

  std::size_t size() const noexcept { return objects.size(); }
  std::size_t dim(std::size_t x, std::size_t y) const { return dims[x * objects.size() + y]; }

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (auto d : dims) t += d;
    return t;
  }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == name) return i;
    return std::nullopt;
  }

  std::size_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::UnknownName, "no object named '" + name + "'");
  }

  friend bool operator==(const GraphType&, const GraphType&) = default;
};

namespace detail {

inline bool in_field(const Field& f, const Scalar& s) { return f.contains(s); }
inline bool in_field(const Field& f, const Dual& s) { return f.contains(s.a) && f.contains(s.b); }

}  // namespace detail

/// A finite linear category given by structure constants.
///
/// Composition is diagrammatic: m_{xyz} : C(x,y) ⊗ C(y,z) → C(x,z). The
/// tensor of the triple (x,y,z) is stored densely with flat index
/// (i·d(y,z) + j)·d(x,z) + k for the coefficient (m_{xyz})^k_{ij}.
/// S is the scalar type: a field element, or a dual number for first-order
/// deformations.
template <class S>
class BasicLinCat {
 public:
  using scalar_type = S;
  using Vec = std::vector<S>;
  using Term = std::pair<std::size_t, S>;

  BasicLinCat() = default;

  /// Checks shapes, field membership, and every associativity and unit equation.
  static BasicLinCat make(Field field, GraphType graph, std::vector<Vec> mult, std::vector<Vec> units) {
    BasicLinCat c = make_unchecked(field, std::move(graph), std::move(mult), std::move(units));
    auto v = c.violations(64);
    if (!v.empty()) throw AxiomViolation(std::move(v));
    return c;
  }

  /// Checks shapes and field membership only.
  static BasicLinCat make_unchecked(Field field, GraphType graph, std::vector<Vec> mult, std::vector<Vec> units) {
    BasicLinCat c;
    c.field_ = field;
    c.graph_ = std::move(graph);
    const std::size_t n = c.graph_.size();
    if (mult.size() != n * n * n) throw Error(ErrorKind::ShapeMismatch, "expected one tensor per ordered triple of objects");
    if (units.size() != n) throw Error(ErrorKind::ShapeMismatch, "expected one unit per object");
    for (std::size_t x = 0; x < n; ++x) {
      if (units[x].size() != c.dim(x, x))
        throw Error(ErrorKind::ShapeMismatch, "unit of '" + c.graph_.objects[x] + "' has the wrong length");
      for (const auto& s : units[x])
        if (!detail::in_field(field, s)) throw Error(ErrorKind::FieldMismatch, "unit entry outside " + field.name());
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          const auto& t = mult[c.triple(x, y, z)];
          if (t.size() != c.dim(x, y) * c.dim(y, z) * c.dim(x, z))
            throw Error(ErrorKind::ShapeMismatch, "tensor (" + c.graph_.objects[x] + "," + c.graph_.objects[y] + "," +
                                                      c.graph_.objects[z] + ") has the wrong size");
          for (const auto& s : t)
            if (!detail::in_field(field, s)) throw Error(ErrorKind::FieldMismatch, "structure constant outside " + field.name());
        }
    c.mult_ = std::move(mult);
    c.units_ = std::move(units);
    c.build_products();
    return c;
  }

  const Field& field() const noexcept { return field_; }
  const GraphType& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.size(); }
  std::size_t dim(std::size_t x, std::size_t y) const { return graph_.dim(x, y); }
  const std::string& object(std::size_t x) const { return graph_.objects[x]; }
  const std::vector<std::string>& objects() const noexcept { return graph_.objects; }
  std::size_t index(const std::string& name) const { return graph_.index(name); }
  std::size_t total_dim() const { return graph_.total_dim(); }

  S zero() const { return scalar_traits<S>::zero(field_); }
  S one() const { return scalar_traits<S>::one(field_); }
  Vec zeros(std::size_t n) const { return Vec(n, zero()); }
  Vec basis_vector(std::size_t x, std::size_t y, std::size_t i) const {
    Vec v = zeros(dim(x, y));
    v[i] = one();
    return v;
  }

  const Vec& tensor(std::size_t x, std::size_t y, std::size_t z) const { return mult_[triple(x, y, z)]; }
  const std::vector<Vec>& tensors() const noexcept { return mult_; }
  const std::vector<Vec>& units() const noexcept { return units_; }

  const S& coeff(std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j, std::size_t k) const {
    return mult_[triple(x, y, z)][(i * dim(y, z) + j) * dim(x, z) + k];
  }

  const Vec& unit(std::size_t x) const { return units_[x]; }

  /// Nonzero coordinates of e_i ; e_j for e_i ∈ C(x,y), e_j ∈ C(y,z).
  const std::vector<Term>& basis_product(std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j) const {
    return products_[triple(x, y, z)][i * dim(y, z) + j];
  }

  /// a ; b for a ∈ C(x,y), b ∈ C(y,z).
  Vec compose(std::size_t x, std::size_t y, std::size_t z, std::span<const S> a, std::span<const S> b) const {
    Vec r = zeros(dim(x, z));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j].is_zero()) continue;
        const S ab = a[i] * b[j];
        for (const auto& [k, v] : basis_product(x, y, z, i, j)) r[k] += ab * v;
      }
    }
    return r;
  }

  /// Every nonzero residual of the equations Ass and Id, up to `limit` of them.
  ///
  /// Indices are object positions followed by 1-based basis indices:
  /// Ass (x,y,z,t,i,j,k,p), Id-left (x,y,j,k) for 1_x;e_j = e_k in C(x,y),
  /// Id-right (y,x,j,k) for e_j;1_x = e_k in C(y,x).
  std::vector<Violation> violations(std::size_t limit = std::numeric_limits<std::size_t>::max()) const {
    std::vector<Violation> out;
    const std::size_t n = size();
    auto full = [&] { return out.size() >= limit; };
    for (std::size_t x = 0; x < n && !full(); ++x)
      for (std::size_t y = 0; y < n && !full(); ++y) {
        // 1_x ; e_j = e_j for e_j ∈ C(x,y)
        for (std::size_t j = 0; j < dim(x, y) && !full(); ++j) {
          const Vec lhs = compose(x, x, y, units_[x], basis_vector(x, y, j));
          for (std::size_t k = 0; k < dim(x, y) && !full(); ++k) {
            const S r = k == j ? lhs[k] - one() : lhs[k];
            if (!r.is_zero()) out.push_back({"Id-left", {x, y, j + 1, k + 1}, r.to_string()});
          }
        }
        // e_j ; 1_x = e_j for e_j ∈ C(y,x)
        for (std::size_t j = 0; j < dim(y, x) && !full(); ++j) {
          const Vec lhs = compose(y, x, x, basis_vector(y, x, j), units_[x]);
          for (std::size_t k = 0; k < dim(y, x) && !full(); ++k) {
            const S r = k == j ? lhs[k] - one() : lhs[k];
            if (!r.is_zero()) out.push_back({"Id-right", {y, x, j + 1, k + 1}, r.to_string()});
          }
        }
      }
    for (std::size_t x = 0; x < n && !full(); ++x)
      for (std::size_t y = 0; y < n && !full(); ++y)
        for (std::size_t z = 0; z < n && !full(); ++z)
          for (std::size_t t = 0; t < n && !full(); ++t)
            check_associativity(x, y, z, t, out, limit);
    return out;
  }

  bool is_valid() const { return violations(1).empty(); }

  friend bool operator==(const BasicLinCat& a, const BasicLinCat& b) {
    return a.field_ == b.field_ && a.graph_ == b.graph_ && a.mult_ == b.mult_ && a.units_ == b.units_;
  }

 private:
  std::size_t triple(std::size_t x, std::size_t y, std::size_t z) const {
    const std::size_t n = size();
    return (x * n + y) * n + z;
  }

  void build_products() {
    const std::size_t n = size();
    products_.assign(n * n * n, {});
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          const std::size_t dxy = dim(x, y), dyz = dim(y, z), dxz = dim(x, z);
          const Vec& t = mult_[triple(x, y, z)];
          auto& table = products_[triple(x, y, z)];
          table.assign(dxy * dyz, {});
          for (std::size_t i = 0; i < dxy; ++i)
            for (std::size_t j = 0; j < dyz; ++j)
              for (std::size_t k = 0; k < dxz; ++k) {
                const S& v = t[(i * dyz + j) * dxz + k];
                if (!v.is_zero()) table[i * dyz + j].emplace_back(k, v);
              }
        }
  }

  // (e_i ; e_j) ; e_k − e_i ; (e_j ; e_k) over C(x,y) × C(y,z) × C(z,t).
  void check_associativity(std::size_t x, std::size_t y, std::size_t z, std::size_t t, std::vector<Violation>& out,
                           std::size_t limit) const {
    const std::size_t dxy = dim(x, y), dyz = dim(y, z), dzt = dim(z, t), dxt = dim(x, t);
    if (dxy == 0 || dyz == 0 || dzt == 0) return;
    for (std::size_t i = 0; i < dxy; ++i)
      for (std::size_t j = 0; j < dyz; ++j) {
        const auto& ij = basis_product(x, y, z, i, j);
        for (std::size_t k = 0; k < dzt; ++k) {
          Vec r = zeros(dxt);
          for (const auto& [l, v] : ij)
            for (const auto& [p, w] : basis_product(x, z, t, l, k)) r[p] += v * w;
          for (const auto& [l, v] : basis_product(y, z, t, j, k))
            for (const auto& [p, w] : basis_product(x, y, t, i, l)) r[p] -= v * w;
          for (std::size_t p = 0; p < dxt; ++p) {
            if (r[p].is_zero()) continue;
            out.push_back({"Ass", {x, y, z, t, i + 1, j + 1, k + 1, p + 1}, r[p].to_string()});
            if (out.size() >= limit) return;
          }
        }
      }
  }

  Field field_;
  GraphType graph_;
  std::vector<Vec> mult_;
  std::vector<Vec> units_;
  std::vector<std::vector<std::vector<Term>>> products_;
};

using LinCat = BasicLinCat<Scalar>;
using DualLinCat = BasicLinCat<Dual>;

/// The ε-linear extension C[ε] of a category: same constants, dual scalars.
inline DualLinCat extend_to_duals(const LinCat& c) {
  std::vector<DualVector> mult, units;
  for (const auto& t : c.tensors()) mult.push_back(embed(t));
  for (const auto& u : c.units()) units.push_back(embed(u));
  return DualLinCat::make_unchecked(c.field(), c.graph(), std::move(mult), std::move(units));
}

/// Reduction modulo ε of a category over dual numbers.
inline LinCat reduce_mod_eps(const DualLinCat& c) {
  std::vector<Vector> mult, units;
  for (const auto& t : c.tensors()) mult.push_back(constant_part(t));
  for (const auto& u : c.units()) units.push_back(constant_part(u));
  return LinCat::make_unchecked(c.field(), c.graph(), std::move(mult), std::move(units));
}

}  // namespace lincat

#endif  // LINCAT_CATEGORY_HPP
