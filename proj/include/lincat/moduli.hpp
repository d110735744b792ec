#ifndef LINCAT_MODULI_HPP
#define LINCAT_MODULI_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lincat/bimodule.hpp"
#include "lincat/category.hpp"
#include "lincat/functor.hpp"
#include "lincat/hochschild.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// A polynomial in numbered variables; a monomial is the sorted multiset of
/// its variable indices.
class Polynomial {
 public:
  using Monomial = std::vector<std::size_t>;

  void add(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    std::sort(m.begin(), m.end());
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  Scalar evaluate(const Field& f, std::span<const Scalar> point) const {
    Scalar s = f.zero();
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (auto v : m) t *= point[v];
      s += t;
    }
    return s;
  }

  /// Row of the Jacobian at `point`.
  void gradient(std::span<const Scalar> point, std::span<Scalar> row) const {
    for (const auto& [m, c] : terms_)
      for (std::size_t t = 0; t < m.size(); ++t) {
        Scalar d = c;
        for (std::size_t u = 0; u < m.size(); ++u)
          if (u != t) d *= point[m[u]];
        row[m[t]] += d;
      }
  }

  /// Highest degree first, then lexicographic in the variable indices.
  std::string to_string(const std::vector<std::string>& names) const {
    std::vector<const std::pair<const Monomial, Scalar>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->first.size() > b->first.size(); });
    if (order.empty()) return "0";
    std::string s;
    for (const auto* t : order) {
      std::string c = t->second.to_string();
      const bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      if (s.empty()) s = neg ? "-" : "";
      else s += neg ? " - " : " + ";
      std::string body;
      if (c != "1" || t->first.empty()) body = c;
      for (auto v : t->first) body += (body.empty() ? "" : "*") + names[v];
      s += body;
    }
    return s;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::map<Monomial, Scalar> terms_;
};

/// A polynomial system with named variables and one label per equation.
struct PolySystem {
  Field field;
  std::string kind;
  std::vector<std::string> variables;
  std::vector<Polynomial> equations;
  std::vector<std::string> labels;

  std::size_t variable(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == name) return i;
    throw Error(ErrorKind::UnknownName, "no variable named '" + name + "'");
  }

  void push(std::string label, Polynomial p) {
    if (p.is_zero()) return;
    labels.push_back(std::move(label));
    equations.push_back(std::move(p));
  }

  /// Nonzero values of the equations at `point`.
  std::vector<Violation> residuals(std::span<const Scalar> point) const {
    if (point.size() != variables.size()) throw Error(ErrorKind::ShapeMismatch, "point has the wrong number of coordinates");
    for (const auto& s : point)
      if (!field.contains(s)) throw Error(ErrorKind::FieldMismatch, "point coordinate outside " + field.name());
    std::vector<Violation> out;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const Scalar r = equations[e].evaluate(field, point);
      if (!r.is_zero()) out.push_back({labels[e], {e + 1}, r.to_string()});
    }
    return out;
  }

  std::string to_text() const {
    std::string s = "# kind: " + kind + "\n# field: " + field.name() + "\n# vars:";
    for (const auto& v : variables) s += " " + v;
    s += "\n";
    for (std::size_t e = 0; e < equations.size(); ++e) s += equations[e].to_string(variables) + "  # " + labels[e] + "\n";
    return s;
  }

  static PolySystem parse(const std::string& text, const Field& field);
};

namespace detail {

inline std::string indexed(const std::string& head, const std::vector<std::string>& a, const std::vector<std::size_t>& b) {
  std::string s = head + "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i];
  s += "][";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i] + 1);
  return s + "]";
}

// head[a+1,…][b+1,…]
inline std::string numbered(const std::string& head, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::string> as;
  for (auto x : a) as.push_back(std::to_string(x + 1));
  return indexed(head, as, b);
}

inline void check_object_names(const std::vector<std::string>& objs) {
  for (const auto& o : objs)
    if (o.empty() || o.find_first_of(" \t#[],*+-/") != std::string::npos)
      throw Error(ErrorKind::BadParams, "object name '" + o + "' cannot appear in equation text");
}

inline std::vector<std::string> names_of(const GraphType& g, std::initializer_list<std::size_t> xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back(g.objects[x]);
  return out;
}

}  // namespace detail

/// Structure equations of linear categories on the free graph `g`. The
/// variables are the composition constants m[x,y,z][k,i,j], in the layout
/// of the category's tensors, followed by the unit coordinates u[x][i].
inline PolySystem cat_system(const GraphType& g, const Field& field = Field::rationals()) {
  detail::check_object_names(g.objects);
  const std::size_t n = g.size();
  PolySystem s{field, "cat", {}, {}, {}};
  std::vector<std::size_t> off(n * n * n);
  auto d = [&](std::size_t x, std::size_t y) { return g.dim(x, y); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        off[(x * n + y) * n + z] = s.variables.size();
        for (std::size_t i = 0; i < d(x, y); ++i)
          for (std::size_t j = 0; j < d(y, z); ++j)
            for (std::size_t k = 0; k < d(x, z); ++k)
              s.variables.push_back(detail::indexed("m", detail::names_of(g, {x, y, z}), {k, i, j}));
      }
  std::vector<std::size_t> uoff(n);
  for (std::size_t x = 0; x < n; ++x) {
    uoff[x] = s.variables.size();
    for (std::size_t i = 0; i < d(x, x); ++i) s.variables.push_back(detail::indexed("u", {g.objects[x]}, {i}));
  }
  auto m = [&](std::size_t x, std::size_t y, std::size_t z, std::size_t k, std::size_t i, std::size_t j) {
    return off[(x * n + y) * n + z] + (i * d(y, z) + j) * d(x, z) + k;
  };
  const Scalar one = field.one();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t t = 0; t < n; ++t)
          for (std::size_t i = 0; i < d(x, y); ++i)
            for (std::size_t j = 0; j < d(y, z); ++j)
              for (std::size_t k = 0; k < d(z, t); ++k)
                for (std::size_t p = 0; p < d(x, t); ++p) {
                  Polynomial e;
                  for (std::size_t l = 0; l < d(x, z); ++l) e.add({m(x, z, t, p, l, k), m(x, y, z, l, i, j)}, one);
                  for (std::size_t l = 0; l < d(y, t); ++l) e.add({m(x, y, t, p, i, l), m(y, z, t, l, j, k)}, -one);
                  s.push(detail::indexed("Ass", detail::names_of(g, {x, y, z, t}), {i, j, k, p}), std::move(e));
                }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t j = 0; j < d(x, y); ++j)
        for (std::size_t k = 0; k < d(x, y); ++k) {
          Polynomial e;
          for (std::size_t i = 0; i < d(x, x); ++i) e.add({m(x, x, y, k, i, j), uoff[x] + i}, one);
          if (j == k) e.add({}, -one);
          s.push(detail::indexed("IdL", detail::names_of(g, {x, y}), {j, k}), std::move(e));
        }
      for (std::size_t j = 0; j < d(y, x); ++j)
        for (std::size_t k = 0; k < d(y, x); ++k) {
          Polynomial e;
          for (std::size_t i = 0; i < d(x, x); ++i) e.add({m(y, x, x, k, j, i), uoff[x] + i}, one);
          if (j == k) e.add({}, -one);
          s.push(detail::indexed("IdR", detail::names_of(g, {y, x}), {j, k}), std::move(e));
        }
    }
  return s;
}

/// Unital associative algebras of dimension n.
inline PolySystem ass_system(long n, const Field& field = Field::rationals()) {
  if (n < 1) throw Error(ErrorKind::BadParams, "dimension must be at least 1");
  PolySystem s = cat_system(GraphType({"0"}, {static_cast<std::size_t>(n)}), field);
  s.kind = "ass";
  return s;
}

/// Commutative ones: adds m[k,i,j] − m[k,j,i] for i < j.
inline PolySystem com_system(long n, const Field& field = Field::rationals()) {
  PolySystem s = ass_system(n, field);
  s.kind = "com";
  const auto d = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Polynomial e;
        e.add({(i * d + j) * d + k}, field.one());
        e.add({(j * d + i) * d + k}, -field.one());
        s.push(detail::indexed("Com", {"0"}, {k, i, j}), std::move(e));
      }
  return s;
}

/// Functors C → D over a fixed object map; variables f[x,y][i,j] in the
/// layout of the functor's matrices.
inline PolySystem fct_system(const LinCat& c, const LinCat& d, const std::vector<std::size_t>& object_map) {
  if (c.field() != d.field()) throw Error(ErrorKind::FieldMismatch, "categories over different fields");
  if (object_map.size() != c.size()) throw Error(ErrorKind::BadParams, "object map must cover every source object");
  for (auto y : object_map)
    if (y >= d.size()) throw Error(ErrorKind::BadParams, "object map points outside the target");
  detail::check_object_names(c.objects());
  const Field& F = c.field();
  const std::size_t n = c.size();
  PolySystem s{F, "fct", {}, {}, {}};
  std::vector<std::size_t> off(n * n);
  auto fx = [&](std::size_t x) { return object_map[x]; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      off[x * n + y] = s.variables.size();
      for (std::size_t i = 0; i < d.dim(fx(x), fx(y)); ++i)
        for (std::size_t j = 0; j < c.dim(x, y); ++j) s.variables.push_back(detail::indexed("f", {c.object(x), c.object(y)}, {i, j}));
    }
  auto f = [&](std::size_t x, std::size_t y, std::size_t i, std::size_t j) { return off[x * n + y] + i * c.dim(x, y) + j; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t j = 0; j < c.dim(x, y); ++j)
          for (std::size_t k = 0; k < c.dim(y, z); ++k)
            for (std::size_t i = 0; i < d.dim(fx(x), fx(z)); ++i) {
              Polynomial e;
              for (std::size_t l = 0; l < c.dim(x, z); ++l) e.add({f(x, z, i, l)}, c.coeff(x, y, z, j, k, l));
              for (std::size_t l = 0; l < d.dim(fx(x), fx(y)); ++l)
                for (std::size_t p = 0; p < d.dim(fx(y), fx(z)); ++p)
                  e.add({f(x, y, l, j), f(y, z, p, k)}, -d.coeff(fx(x), fx(y), fx(z), l, p, i));
              s.push(detail::indexed("Fct", {c.object(x), c.object(y), c.object(z)}, {i, j, k}), std::move(e));
            }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < d.dim(fx(x), fx(x)); ++i) {
      Polynomial e;
      for (std::size_t j = 0; j < c.dim(x, x); ++j) e.add({f(x, x, i, j)}, c.unit(x)[j]);
      e.add({}, -d.unit(fx(x))[i]);
      s.push(detail::indexed("FctId", {c.object(x)}, {i}), std::move(e));
    }
  return s;
}

/// Natural transformations f → g; variables a[x][i], the coordinates of
/// α_x in D(fx, gx).
inline PolySystem tn_system(const LinFunctor& f, const LinFunctor& g) {
  const LinCat& C = f.src();
  const LinCat& D = f.dst();
  if (C.graph() != g.src().graph() || C.tensors() != g.src().tensors() || D.graph() != g.dst().graph() ||
      D.tensors() != g.dst().tensors())
    throw Error(ErrorKind::BadParams, "functors must share source and target");
  detail::check_object_names(C.objects());
  const Field& F = C.field();
  const std::size_t n = C.size();
  PolySystem s{F, "tn", {}, {}, {}};
  std::vector<std::size_t> off(n);
  for (std::size_t x = 0; x < n; ++x) {
    off[x] = s.variables.size();
    for (std::size_t i = 0; i < D.dim(f.object(x), g.object(x)); ++i) s.variables.push_back(detail::indexed("a", {C.object(x)}, {i}));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t fx = f.object(x), fy = f.object(y), gx = g.object(x), gy = g.object(y);
      for (std::size_t l = 0; l < C.dim(x, y); ++l) {
        const Vector el = unit_vector(F, C.dim(x, y), l);
        const Vector ga = g.apply(x, y, el), fa = f.apply(x, y, el);
        for (std::size_t i = 0; i < D.dim(fx, gy); ++i) {
          Polynomial e;
          for (std::size_t j = 0; j < D.dim(fx, gx); ++j)
            for (std::size_t k = 0; k < D.dim(gx, gy); ++k) e.add({off[x] + j}, ga[k] * D.coeff(fx, gx, gy, j, k, i));
          for (std::size_t j = 0; j < D.dim(fx, fy); ++j)
            for (std::size_t k = 0; k < D.dim(fy, gy); ++k) e.add({off[y] + k}, -fa[j] * D.coeff(fx, fy, gy, j, k, i));
          s.push(detail::indexed("TN", {C.object(x), C.object(y)}, {i, l}), std::move(e));
        }
      }
    }
  return s;
}

/// (B,C)-bimodule structures on k^m through the combined action
/// mu[i,j,k][l], the coefficient of v_l in b_i·v_j·c_k.
inline PolySystem bim_system(const LinCat& b, const LinCat& c, long m) {
  if (b.size() != 1 || c.size() != 1) throw Error(ErrorKind::BadParams, "bimodule systems need one-object algebras");
  if (b.field() != c.field()) throw Error(ErrorKind::FieldMismatch, "algebras over different fields");
  if (m < 1) throw Error(ErrorKind::BadParams, "module rank must be at least 1");
  const Field& F = b.field();
  const std::size_t db = b.dim(0, 0), dc = c.dim(0, 0), dm = static_cast<std::size_t>(m);
  PolySystem s{F, "bim", {}, {}, {}};
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < dm; ++j)
      for (std::size_t k = 0; k < dc; ++k)
        for (std::size_t l = 0; l < dm; ++l) s.variables.push_back(detail::numbered("mu", {i, j, k}, {l}));
  auto mu = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return ((i * dm + j) * dc + k) * dm + l; };
  // b_i·(b_j·v_k·c_p)·c_q = (b_i b_j)·v_k·(c_p c_q)
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < dm; ++k)
        for (std::size_t p = 0; p < dc; ++p)
          for (std::size_t q = 0; q < dc; ++q)
            for (std::size_t l = 0; l < dm; ++l) {
              Polynomial e;
              for (std::size_t r = 0; r < dm; ++r) e.add({mu(i, r, q, l), mu(j, k, p, r)}, F.one());
              for (std::size_t r = 0; r < db; ++r)
                for (std::size_t t = 0; t < dc; ++t) e.add({mu(r, k, t, l)}, -(b.coeff(0, 0, 0, i, j, r) * c.coeff(0, 0, 0, p, q, t)));
              s.push(detail::numbered("Bim", {i, j, k, p, q}, {l}), std::move(e));
            }
  return s;
}

/// Coordinates of `c` as a point of cat_system(c.graph()).
inline Vector category_point(const LinCat& c) {
  Vector p;
  for (const auto& t : c.tensors()) p.insert(p.end(), t.begin(), t.end());
  for (const auto& u : c.units()) p.insert(p.end(), u.begin(), u.end());
  return p;
}

/// The category with structure constants `point`; validated.
inline LinCat category_from_point(const GraphType& g, const Field& field, std::span<const Scalar> point) {
  const std::size_t n = g.size();
  std::vector<Vector> mult, units;
  std::size_t pos = 0;
  auto take = [&](std::size_t len) {
    if (pos + len > point.size()) throw Error(ErrorKind::ShapeMismatch, "point is too short for the graph");
    Vector v(point.begin() + static_cast<std::ptrdiff_t>(pos), point.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    return v;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) mult.push_back(take(g.dim(x, y) * g.dim(y, z) * g.dim(x, z)));
  for (std::size_t x = 0; x < n; ++x) units.push_back(take(g.dim(x, x)));
  if (pos != point.size()) throw Error(ErrorKind::ShapeMismatch, "point is too long for the graph");
  return LinCat::make(field, g, std::move(mult), std::move(units));
}

/// Combined-action coordinates of a bimodule, a point of bim_system.
inline Vector bimodule_point(const Bimodule& v) {
  const Field& F = v.field();
  const std::size_t db = v.left_dim(), dc = v.right_dim(), m = v.dim();
  Vector p;
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < dc; ++k) {
        const Vector r = v.act_right(v.act_left(unit_vector(F, db, i), unit_vector(F, m, j)), unit_vector(F, dc, k));
        p.insert(p.end(), r.begin(), r.end());
      }
  return p;
}

/// Thrown when a tangent space is requested away from the zero set.
class NotAPoint : public Error {
 public:
  explicit NotAPoint(std::vector<Violation> residuals)
      : Error(ErrorKind::NotAPoint, residuals.empty() ? "not a point" : describe(residuals.front())),
        residuals_(std::move(residuals)) {}
  const std::vector<Violation>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<Violation> residuals_;
};

inline Matrix jacobian(const PolySystem& s, std::span<const Scalar> point) {
  Matrix j(s.field, s.equations.size(), s.variables.size());
  Vector row(s.variables.size(), s.field.zero());
  for (std::size_t e = 0; e < s.equations.size(); ++e) {
    std::fill(row.begin(), row.end(), s.field.zero());
    s.equations[e].gradient(point, row);
    for (std::size_t v = 0; v < row.size(); ++v) j(e, v) = row[v];
  }
  return j;
}

/// Kernel of the Jacobian at a point of the zero set.
inline Subspace tangent_space(const PolySystem& s, std::span<const Scalar> point) {
  auto r = s.residuals(point);
  if (!r.empty()) throw NotAPoint(std::move(r));
  return kernel(jacobian(s, point));
}

struct InclusionReport {
  std::size_t dim_hz2 = 0;
  std::size_t dim_normalized = 0;
  std::size_t dim_tangent = 0;
  bool inclusion = false;
  std::vector<Vector> normalized;          // basis of the normalized 2-cocycles
  std::vector<std::size_t> outside;        // indices into `normalized` not in the tangent space
};

/// Checks that every normalized 2-cocycle μ gives the tangent vector
/// (δm = μ, δu = 0) of cat_system at c.
inline InclusionReport check_hz2_inclusion(const LinCat& c) {
  const Field& F = c.field();
  const auto z = cohomology(c, 2);
  const CochainSpace space(c, 2);
  InclusionReport rep;
  rep.dim_hz2 = z.dim_cocycles;

  // μ(1_x, e_j) and μ(e_i, 1_y) for every basis element, as linear forms
  std::vector<Vector> forms;
  for (const auto& blk : space.blocks()) {
    const std::size_t x = blk.objects[0], y = blk.objects[1], w = blk.objects[2];
    const std::size_t dyw = c.dim(y, w), dxw = c.dim(x, w);
    if (x == y)
      for (std::size_t j = 0; j < dyw; ++j)
        for (std::size_t k = 0; k < dxw; ++k) {
          Vector f(space.dim(), F.zero());
          for (std::size_t i = 0; i < c.dim(x, x); ++i) f[blk.offset + (i * dyw + j) * dxw + k] = c.unit(x)[i];
          forms.push_back(std::move(f));
        }
    if (y == w)
      for (std::size_t i = 0; i < c.dim(x, y); ++i)
        for (std::size_t k = 0; k < dxw; ++k) {
          Vector f(space.dim(), F.zero());
          for (std::size_t j = 0; j < dyw; ++j) f[blk.offset + (i * dyw + j) * dxw + k] = c.unit(y)[j];
          forms.push_back(std::move(f));
        }
  }
  const auto& zb = z.cocycles.basis();
  Matrix a(F, forms.size(), zb.size());
  for (std::size_t r = 0; r < forms.size(); ++r)
    for (std::size_t t = 0; t < zb.size(); ++t) {
      Scalar s = F.zero();
      for (std::size_t q = 0; q < space.dim(); ++q)
        if (!forms[r][q].is_zero() && !zb[t][q].is_zero()) s += forms[r][q] * zb[t][q];
      a(r, t) = s;
    }
  for (const auto& coeffs : kernel_basis(a)) {
    Vector mu(space.dim(), F.zero());
    for (std::size_t t = 0; t < zb.size(); ++t)
      if (!coeffs[t].is_zero())
        for (std::size_t q = 0; q < space.dim(); ++q) mu[q] += coeffs[t] * zb[t][q];
    rep.normalized.push_back(std::move(mu));
  }
  rep.dim_normalized = rep.normalized.size();

  const PolySystem sys = cat_system(c.graph(), F);
  const Vector point = category_point(c);
  const Subspace t = tangent_space(sys, point);
  rep.dim_tangent = t.dim();
  for (std::size_t i = 0; i < rep.normalized.size(); ++i) {
    Vector v = rep.normalized[i];
    v.resize(sys.variables.size(), F.zero());
    if (!t.contains(v)) rep.outside.push_back(i);
  }
  rep.inclusion = rep.outside.empty();
  return rep;
}

struct EnumerationResult {
  std::uint64_t searched = 0;
  std::vector<Vector> points;
};

/// All 𝔽_p-points of `s`, in lexicographic order of the coordinates.
inline EnumerationResult enumerate_points(const PolySystem& s, std::uint64_t p, std::uint64_t cap = std::uint64_t{1} << 24) {
  const Field F = Field::prime(p);
  if (!s.field.is_rational() && s.field != F) throw Error(ErrorKind::FieldMismatch, "system is defined over " + s.field.name());
  const std::size_t nv = s.variables.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < nv; ++i) {
    if (total > cap / p) throw Error(ErrorKind::SearchTooLarge, std::to_string(p) + "^" + std::to_string(nv) + " exceeds the cap");
    total *= p;
  }
  if (total > cap) throw Error(ErrorKind::SearchTooLarge, "search space exceeds the cap");

  struct Term {
    std::uint64_t coef;
    std::vector<std::size_t> vars;
  };
  std::vector<std::vector<Term>> eqs;
  for (const auto& e : s.equations) {
    std::vector<Term> ts;
    for (const auto& [m, c] : e.terms()) {
      const Scalar r = c.is_rational() ? F.from_mpq(c.to_mpq()) : c;
      if (!r.is_zero()) ts.push_back({r.residue_value(), m});
    }
    eqs.push_back(std::move(ts));
  }

  EnumerationResult out;
  out.searched = total;
  std::vector<std::uint64_t> a(nv, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    bool ok = true;
    for (const auto& ts : eqs) {
      std::uint64_t sum = 0;
      for (const auto& t : ts) {
        std::uint64_t v = t.coef;
        for (auto x : t.vars) v = detail::mulmod(v, a[x], p);
        sum = (sum + v) % p;
      }
      if (sum != 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Vector pt;
      for (auto v : a) pt.push_back(F.from_int(static_cast<std::int64_t>(v)));
      out.points.push_back(std::move(pt));
    }
    for (std::size_t i = nv; i-- > 0;) {
      if (++a[i] < p) break;
      a[i] = 0;
    }
  }
  return out;
}

namespace detail {

inline std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline Polynomial parse_polynomial(const std::string& text, const PolySystem& s, std::size_t line) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
  };
  Polynomial p;
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool neg = false;
  int depth = 0;
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      // a sign before the first term
      if (terms.empty() && strip(cur).empty()) {
        neg = ch == '-';
        cur.clear();
        continue;
      }
      terms.emplace_back(neg, strip(cur));
      neg = ch == '-';
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw fail("unbalanced brackets");
  terms.emplace_back(neg, strip(cur));
  for (const auto& [minus, term] : terms) {
    if (term.empty()) throw fail("empty term");
    Scalar coef = s.field.one();
    Polynomial::Monomial mono;
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      factor = strip(factor);
      if (factor.empty()) throw fail("empty factor in '" + term + "'");
      if (factor.find('[') == std::string::npos) coef *= s.field.parse(factor);
      else {
        std::size_t v = 0;
        try {
          v = s.variable(factor);
        } catch (const Error&) {
          throw fail("undeclared variable '" + factor + "'");
        }
        mono.push_back(v);
      }
    }
    p.add(std::move(mono), minus ? -coef : coef);
  }
  return p;
}

}  // namespace detail

/// Reads the text written by to_text: "# kind:", "# vars:" header lines,
/// then one polynomial per line with an optional "# label" comment.
inline PolySystem PolySystem::parse(const std::string& text, const Field& field) {
  PolySystem s{field, "", {}, {}, {}};
  std::stringstream in(text);
  std::string line;
  std::size_t no = 0;
  bool have_vars = false;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    const std::string body = detail::strip(line.substr(0, hash));
    const std::string comment = hash == std::string::npos ? "" : detail::strip(line.substr(hash + 1));
    if (body.empty()) {
      if (comment.rfind("vars:", 0) == 0) {
        std::stringstream vs(comment.substr(5));
        std::string v;
        while (vs >> v) s.variables.push_back(v);
        have_vars = true;
      } else if (comment.rfind("kind:", 0) == 0) {
        s.kind = detail::strip(comment.substr(5));
      }
      continue;
    }
    if (!have_vars) throw Error(ErrorKind::ParseError, "line " + std::to_string(no) + ": equation before the '# vars:' line");
    s.equations.push_back(detail::parse_polynomial(body, s, no));
    s.labels.push_back(comment.empty() ? "E" + std::to_string(s.equations.size()) : comment);
  }
  return s;
}

}  // namespace lincat

#endif  // LINCAT_MODULI_HPP
