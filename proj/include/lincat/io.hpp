#ifndef LINCAT_IO_HPP
#define LINCAT_IO_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lincat/bimodule.hpp"
#include "lincat/category.hpp"
#include "lincat/dual.hpp"
#include "lincat/functor.hpp"
#include "lincat/hochschild.hpp"
#include "lincat/karoubi.hpp"

namespace lincat {

using Json = nlohmann::ordered_json;

/// Resolves a category reference: an inline category object, or a string
/// naming a file or catalog entry.
using CategoryResolver = std::function<LinCat(const Json&)>;

namespace detail {

[[noreturn]] inline void bad_file(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_file(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::size_t index_of(const Json& j, std::size_t bound, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || static_cast<std::size_t>(j.get<long long>()) > bound)
    bad_file(std::string(what) + " index " + j.dump() + " out of range 1.." + std::to_string(bound));
  return static_cast<std::size_t>(j.get<long long>()) - 1;
}

inline std::size_t object_of(const GraphType& g, const Json& j) {
  if (!j.is_string()) bad_file("object references are names, got " + j.dump());
  const auto x = g.find(j.get<std::string>());
  if (!x) throw Error(ErrorKind::UnknownName, "no object named '" + j.get<std::string>() + "'");
  return *x;
}

inline std::size_t count_of(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad_file(std::string(what) + " must be a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace detail

/// Integers, or strings holding "n", "a/b" or a terminating decimal "1.25".
inline Scalar scalar_from_json(const Json& j, const Field& f) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (!j.is_string()) detail::bad_file("scalars are strings or integers, got " + j.dump());
  std::string s = j.get<std::string>();
  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) detail::bad_file("bad scalar '" + s + "'");
    s = s.substr(0, dot) + frac + "/1" + std::string(frac.size(), '0');
  }
  return f.parse(s);
}

inline Json scalar_to_json(const Scalar& s) { return s.to_string(); }

inline Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

inline Vector vector_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) detail::bad_file("expected an array of scalars");
  Vector v;
  for (const auto& s : j) v.push_back(scalar_from_json(s, f));
  return v;
}

inline Field field_from_json(const Json& j) {
  const std::string kind = detail::member(j, "kind").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") {
    const Json& p = detail::member(j, "p");
    if (!p.is_number_integer() || p.get<long long>() < 2) detail::bad_file("\"p\" must be a prime");
    return Field::prime(static_cast<std::uint64_t>(p.get<long long>()));
  }
  detail::bad_file("unknown field kind '" + kind + "'");
}

inline Json field_to_json(const Field& f) {
  if (f.is_rational()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", f.characteristic()}};
}

/// Structure constants of a category file, not yet validated.
struct CategoryData {
  Field field;
  GraphType graph;
  std::vector<Vector> mult;
  std::vector<Vector> units;

  LinCat build() const { return LinCat::make(field, graph, mult, units); }
};

inline CategoryData category_data_from_json(const Json& j) {
  CategoryData d;
  d.field = field_from_json(detail::member(j, "field"));
  std::vector<std::string> objs;
  for (const auto& o : detail::member(j, "objects")) {
    if (!o.is_string()) detail::bad_file("object names are strings");
    objs.push_back(o.get<std::string>());
  }
  const std::size_t n = objs.size();
  std::vector<std::size_t> dims(n * n, 0);
  const Json& dj = detail::member(j, "dims");
  if (!dj.is_object()) detail::bad_file("\"dims\" must map \"x|y\" to integers");
  for (const auto& [key, val] : dj.items()) {
    // object names may themselves contain '|'; the split must be unambiguous
    std::optional<std::pair<std::size_t, std::size_t>> xy;
    for (auto bar = key.find('|'); bar != std::string::npos; bar = key.find('|', bar + 1)) {
      const auto l = std::find(objs.begin(), objs.end(), key.substr(0, bar));
      const auto r = std::find(objs.begin(), objs.end(), key.substr(bar + 1));
      if (l == objs.end() || r == objs.end()) continue;
      if (xy) detail::bad_file("dims key '" + key + "' is ambiguous");
      xy.emplace(l - objs.begin(), r - objs.begin());
    }
    if (!xy) detail::bad_file("dims key '" + key + "' is not of the form x|y");
    dims[xy->first * n + xy->second] = detail::count_of(val, "dimension");
  }
  d.graph = GraphType(objs, dims);
  const GraphType& g = d.graph;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) d.mult.push_back(zeros(d.field, g.dim(x, y) * g.dim(y, z) * g.dim(x, z)));
  for (const auto& e : detail::member(j, "mult")) {
    if (!e.is_array() || e.size() != 7) detail::bad_file("mult entries are [x,y,z,i,j,k,scalar]");
    const std::size_t x = detail::object_of(g, e[0]), y = detail::object_of(g, e[1]), z = detail::object_of(g, e[2]);
    const std::size_t i = detail::index_of(e[3], g.dim(x, y), "i"), jj = detail::index_of(e[4], g.dim(y, z), "j"),
                      k = detail::index_of(e[5], g.dim(x, z), "k");
    d.mult[(x * n + y) * n + z][(i * g.dim(y, z) + jj) * g.dim(x, z) + k] = scalar_from_json(e[6], d.field);
  }
  for (std::size_t x = 0; x < n; ++x) d.units.push_back(zeros(d.field, g.dim(x, x)));
  const Json& uj = detail::member(j, "units");
  if (!uj.is_object()) detail::bad_file("\"units\" must map objects to coordinate arrays");
  for (const auto& [key, val] : uj.items()) {
    const std::size_t x = g.index(key);
    Vector u = vector_from_json(val, d.field);
    if (u.size() != g.dim(x, x)) throw Error(ErrorKind::ShapeMismatch, "unit of '" + key + "' has the wrong length");
    d.units[x] = std::move(u);
  }
  return d;
}

inline LinCat category_from_json(const Json& j) { return category_data_from_json(j).build(); }

inline Json category_to_json(const LinCat& c) {
  const std::size_t n = c.size();
  Json j;
  j["field"] = field_to_json(c.field());
  j["objects"] = c.objects();
  Json dims = Json::object();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) dims[c.object(x) + "|" + c.object(y)] = c.dim(x, y);
  j["dims"] = dims;
  Json mult = Json::array();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t i = 0; i < c.dim(x, y); ++i)
          for (std::size_t k = 0; k < c.dim(y, z); ++k)
            for (std::size_t l = 0; l < c.dim(x, z); ++l) {
              const Scalar& s = c.coeff(x, y, z, i, k, l);
              if (!s.is_zero()) mult.push_back(Json{c.object(x), c.object(y), c.object(z), i + 1, k + 1, l + 1, scalar_to_json(s)});
            }
  j["mult"] = mult;
  Json units = Json::object();
  for (std::size_t x = 0; x < n; ++x) units[c.object(x)] = vector_to_json(c.unit(x));
  j["units"] = units;
  return j;
}

/// One line per key and per mult entry.
inline std::string dump_category(const LinCat& c) {
  const Json j = category_to_json(c);
  std::string s = "{\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it != j.begin()) s += ",\n";
    s += "  " + Json(it.key()).dump() + ": ";
    if (it.key() == "mult" && !it->empty()) {
      s += "[\n";
      for (std::size_t e = 0; e < it->size(); ++e) s += "    " + (*it)[e].dump() + (e + 1 < it->size() ? ",\n" : "\n");
      s += "  ]";
    } else {
      s += it->dump();
    }
  }
  return s + "\n}\n";
}

/// {"degree": n, "entries": [[x0,…,xn, i1,…,in, k, scalar], …]}, 1-based.
inline Cochain cochain_from_json(const LinCat& c, const Json& j) {
  const std::size_t n = detail::count_of(detail::member(j, "degree"), "degree");
  detail::check_degree(n, {});
  const CochainSpace s(c, n);
  Cochain out{n, zeros(c.field(), s.dim())};
  for (const auto& e : detail::member(j, "entries")) {
    if (!e.is_array() || e.size() != 2 * n + 3) detail::bad_file("cochain entries of degree " + std::to_string(n) + " have " + std::to_string(2 * n + 3) + " fields");
    std::vector<std::size_t> objs, multi;
    for (std::size_t t = 0; t <= n; ++t) objs.push_back(detail::object_of(c.graph(), e[t]));
    for (std::size_t t = 0; t < n; ++t) multi.push_back(detail::index_of(e[n + 1 + t], c.dim(objs[t], objs[t + 1]), "input"));
    const auto& blk = s.block(objs);
    const std::size_t k = detail::index_of(e[2 * n + 1], blk.out, "output");
    std::size_t flat = 0;
    for (std::size_t t = 0; t < n; ++t) flat = flat * c.dim(objs[t], objs[t + 1]) + multi[t];
    out.coords[blk.offset + flat * blk.out + k] = scalar_from_json(e[2 * n + 2], c.field());
  }
  return out;
}

inline Json cochain_to_json(const LinCat& c, const Cochain& f) {
  const CochainSpace s(c, f.degree);
  Json entries = Json::array();
  for (const auto& blk : s.blocks())
    for (std::size_t q = 0; q < blk.size(); ++q) {
      const Scalar& v = f.coords[blk.offset + q];
      if (v.is_zero()) continue;
      Json e = Json::array();
      for (auto x : blk.objects) e.push_back(c.object(x));
      std::size_t flat = q / blk.out;
      std::vector<std::size_t> multi(f.degree);
      for (std::size_t t = f.degree; t-- > 0;) {
        const std::size_t d = c.dim(blk.objects[t], blk.objects[t + 1]);
        multi[t] = flat % d;
        flat /= d;
      }
      for (auto i : multi) e.push_back(i + 1);
      e.push_back(q % blk.out + 1);
      e.push_back(scalar_to_json(v));
      entries.push_back(std::move(e));
    }
  return Json{{"degree", f.degree}, {"entries", entries}};
}

/// {"source", "target", "object_map": {x: y}, "maps": [[x, y, i, j, scalar]]}
/// with (f_xy)^i_j the coefficient of the i-th basis vector of D(fx, fy) in
/// the image of the j-th of C(x, y).
inline LinFunctor functor_from_json(const Json& j, const CategoryResolver& resolve) {
  auto src = share(resolve(detail::member(j, "source")));
  auto dst = share(resolve(detail::member(j, "target")));
  const std::size_t n = src->size();
  std::vector<std::size_t> map(n, 0);
  std::vector<bool> seen(n, false);
  const Json& om = detail::member(j, "object_map");
  if (!om.is_object()) detail::bad_file("\"object_map\" must map source objects to target objects");
  for (const auto& [key, val] : om.items()) {
    const std::size_t x = src->index(key);
    map[x] = detail::object_of(dst->graph(), val);
    seen[x] = true;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!seen[x]) throw Error(ErrorKind::ShapeMismatch, "object map misses '" + src->object(x) + "'");
  std::vector<Vector> mats;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) mats.push_back(zeros(src->field(), dst->dim(map[x], map[y]) * src->dim(x, y)));
  for (const auto& e : detail::member(j, "maps")) {
    if (!e.is_array() || e.size() != 5) detail::bad_file("map entries are [x,y,i,j,scalar]");
    const std::size_t x = detail::object_of(src->graph(), e[0]), y = detail::object_of(src->graph(), e[1]);
    const std::size_t cols = src->dim(x, y);
    const std::size_t i = detail::index_of(e[2], dst->dim(map[x], map[y]), "i"), jj = detail::index_of(e[3], cols, "j");
    mats[x * n + y][i * cols + jj] = scalar_from_json(e[4], src->field());
  }
  return LinFunctor::make(src, dst, std::move(map), std::move(mats));
}

/// {"left", "right", "dim": m, "left_action": [[i, j, l, scalar]],
/// "right_action": [[j, k, l, scalar]]}: b_i·v_j and v_j·c_k, 1-based.
inline Bimodule bimodule_from_json(const Json& j, const CategoryResolver& resolve) {
  const LinCat b = resolve(detail::member(j, "left"));
  const LinCat c = resolve(detail::member(j, "right"));
  if (b.size() != 1 || c.size() != 1) throw Error(ErrorKind::BadParams, "bimodule files need one-object algebras");
  const std::size_t m = detail::count_of(detail::member(j, "dim"), "dim");
  const std::size_t db = b.dim(0, 0), dc = c.dim(0, 0);
  Vector la = zeros(b.field(), db * m * m), ra = zeros(b.field(), m * dc * m);
  for (const auto& e : detail::member(j, "left_action")) {
    if (!e.is_array() || e.size() != 4) detail::bad_file("left_action entries are [i,j,l,scalar]");
    const std::size_t i = detail::index_of(e[0], db, "i"), jj = detail::index_of(e[1], m, "j"), l = detail::index_of(e[2], m, "l");
    la[(i * m + jj) * m + l] = scalar_from_json(e[3], b.field());
  }
  for (const auto& e : detail::member(j, "right_action")) {
    if (!e.is_array() || e.size() != 4) detail::bad_file("right_action entries are [j,k,l,scalar]");
    const std::size_t jj = detail::index_of(e[0], m, "j"), k = detail::index_of(e[1], dc, "k"), l = detail::index_of(e[2], m, "l");
    ra[(jj * dc + k) * m + l] = scalar_from_json(e[3], b.field());
  }
  return Bimodule::make_unchecked(b, c, m, std::move(la), std::move(ra));
}

/// {"tuple": [x, …], "projector": [[a, b, i, scalar]]}: coordinate i of the
/// (a, b) entry, a morphism tuple[a] → tuple[b], all 1-based.
inline KaroubiObject karoubi_object_from_json(const LinCat& c, const Json& j) {
  KaroubiObject o;
  for (const auto& x : detail::member(j, "tuple")) o.tuple.push_back(detail::object_of(c.graph(), x));
  const std::size_t r = o.tuple.size();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) o.projector.push_back(zeros(c.field(), c.dim(o.tuple[a], o.tuple[b])));
  for (const auto& e : detail::member(j, "projector")) {
    if (!e.is_array() || e.size() != 4) detail::bad_file("projector entries are [a,b,i,scalar]");
    const std::size_t a = detail::index_of(e[0], r, "a"), b = detail::index_of(e[1], r, "b");
    const std::size_t i = detail::index_of(e[2], c.dim(o.tuple[a], o.tuple[b]), "i");
    o.projector[a * r + b][i] = scalar_from_json(e[3], c.field());
  }
  return o;
}

inline Json karoubi_object_to_json(const LinCat& c, const KaroubiObject& o) {
  Json tuple = Json::array(), proj = Json::array();
  const std::size_t r = o.tuple.size();
  for (auto x : o.tuple) tuple.push_back(c.object(x));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < o.projector[a * r + b].size(); ++i)
        if (!o.projector[a * r + b][i].is_zero()) proj.push_back(Json{a + 1, b + 1, i + 1, scalar_to_json(o.projector[a * r + b][i])});
  return Json{{"tuple", tuple}, {"projector", proj}};
}

/// A dual number is a scalar (ε-part 0) or a pair [a, b] meaning a + bε.
inline Dual dual_from_json(const Json& j, const Field& f) {
  if (j.is_array()) {
    if (j.size() != 2) detail::bad_file("dual numbers are [a, b]");
    return {scalar_from_json(j[0], f), scalar_from_json(j[1], f)};
  }
  return {scalar_from_json(j, f), f.zero()};
}

inline Json dual_to_json(const Dual& d) { return Json{scalar_to_json(d.a), scalar_to_json(d.b)}; }

inline DualMatrix dual_matrix_from_json(const Json& j, const Field& f) {
  if (!j.is_array() || j.empty()) detail::bad_file("matrices are nonempty arrays of rows");
  const std::size_t rows = j.size(), cols = j[0].is_array() ? j[0].size() : 0;
  DualMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) detail::bad_file("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dual_from_json(j[r][c], f);
  }
  return m;
}

inline Json dual_matrix_to_json(const DualMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(dual_to_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

inline Json violations_to_json(const std::vector<Violation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(Json{{"equation", v.equation}, {"indices", v.indices}, {"residual", v.residual}});
  return a;
}

inline Json basis_to_json(const Subspace& s) {
  Json a = Json::array();
  for (const auto& v : s.basis()) a.push_back(vector_to_json(v));
  return a;
}

}  // namespace lincat

#endif  // LINCAT_IO_HPP
