#ifndef LINCAT_CATALOG_HPP
#define LINCAT_CATALOG_HPP

#include <cctype>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/constructions.hpp"

namespace lincat {

namespace detail {

inline void require_range(const char* what, long n, long lo, long hi) {
  if (n < lo || n > hi)
    throw Error(ErrorKind::BadParams, std::string(what) + " needs a parameter in [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "], got " + std::to_string(n));
}

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
  return v;
}

// A category in which every hom space has dimension 0 or 1 and every
// defined composite of basis vectors is the basis vector. `rel` must be
// reflexive and transitive.
inline LinCat thin_category(const Field& f, std::size_t n, const std::vector<bool>& rel) {
  std::vector<std::size_t> dims(n * n);
  for (std::size_t i = 0; i < n * n; ++i) dims[i] = rel[i] ? 1 : 0;
  std::vector<Vector> mult;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const bool all = rel[x * n + y] && rel[y * n + z] && rel[x * n + z];
        mult.push_back(all ? Vector{f.one()} : Vector(dims[x * n + y] * dims[y * n + z] * dims[x * n + z], f.zero()));
      }
  std::vector<Vector> units(n, Vector{f.one()});
  return LinCat::make(f, GraphType(numbered(n), dims), std::move(mult), std::move(units));
}

}  // namespace detail

/// The base field as a one-object category.
inline LinCat field_cat(const Field& f) {
  return LinCat::make(f, GraphType({"0"}, {1}), {Vector{f.one()}}, {Vector{f.one()}});
}

/// k[x]/(x^n) with basis 1, x, …, x^{n−1}.
inline LinCat truncated_poly(const Field& f, long n) {
  detail::require_range("truncated_poly", n, 1, 64);
  const std::size_t d = static_cast<std::size_t>(n);
  Vector t = zeros(f, d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; i + j < d; ++j) t[(i * d + j) * d + i + j] = f.one();
  return LinCat::make(f, GraphType({"0"}, {d}), {std::move(t)}, {unit_vector(f, d, 0)});
}

/// M_n(k) with basis e_ab at index a·n + b and e_ab e_cd = δ_bc e_ad.
inline LinCat matrix_algebra(const Field& f, long n) {
  detail::require_range("matrix_algebra", n, 1, 8);
  const std::size_t s = static_cast<std::size_t>(n), d = s * s;
  Vector t = zeros(f, d * d * d);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t c = 0; c < s; ++c) t[((a * s + b) * d + (b * s + c)) * d + a * s + c] = f.one();
  Vector u = zeros(f, d);
  for (std::size_t a = 0; a < s; ++a) u[a * s + a] = f.one();
  return LinCat::make(f, GraphType({"0"}, {d}), {std::move(t)}, {std::move(u)});
}

/// [n]: objects 0..n with a one-dimensional hom i → j exactly when i ≤ j.
inline LinCat chain(const Field& f, long n) {
  detail::require_range("chain", n, 0, 32);
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<bool> rel(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rel[i * m + j] = i <= j;
  return detail::thin_category(f, m, rel);
}

/// [1]: two objects 0, 1 and a single arrow 0 → 1.
inline LinCat interval(const Field& f) { return chain(f, 1); }

/// n objects, every hom space one-dimensional, all composites 1.
inline LinCat indiscrete(const Field& f, long n) {
  detail::require_range("indiscrete", n, 1, 32);
  const std::size_t m = static_cast<std::size_t>(n);
  return detail::thin_category(f, m, std::vector<bool>(m * m, true));
}

/// Δ¹: the linear groupoid on two isomorphic objects.
inline LinCat invertible_interval(const Field& f) { return indiscrete(f, 2); }

/// n copies of the field with no morphisms between them.
inline LinCat discrete(const Field& f, long n) {
  detail::require_range("discrete", n, 1, 64);
  const std::size_t m = static_cast<std::size_t>(n);
  std::vector<bool> rel(m * m);
  for (std::size_t i = 0; i < m; ++i) rel[i * m + i] = true;
  return detail::thin_category(f, m, rel);
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline long parse_count(const std::string& s, const std::string& whole) {
  if (s.empty() || s.size() > 6) throw Error(ErrorKind::BadParams, "bad parameter in '" + whole + "'");
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error(ErrorKind::BadParams, "bad parameter in '" + whole + "'");
  return std::stol(s);
}

// Splits "a,b" at the top-level comma.
inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace detail

/// Looks up a catalog entry by name.
///
/// Names: field (field_cat), tpoly<n> (truncated_poly(n)), m<n>
/// (matrix_algebra(n)), interval, delta1 (invertible_interval), chain<n>,
/// indiscrete<n>, discrete<n>, op(X), tensor(X,Y) (also product(X,Y)).
inline LinCat catalog(const std::string& text, const Field& f) {
  const std::string name = detail::trim(text);
  const auto open = name.find('(');
  if (open != std::string::npos) {
    if (name.back() != ')') throw Error(ErrorKind::UnknownName, "unbalanced catalog name '" + name + "'");
    const std::string head = detail::trim(name.substr(0, open));
    const std::string inner = name.substr(open + 1, name.size() - open - 2);
    const auto args = detail::split_args(inner);
    if (head == "op" && args.size() == 1) return opposite(catalog(args[0], f));
    if ((head == "tensor" || head == "product") && args.size() == 2) return tensor_product(catalog(args[0], f), catalog(args[1], f));
    if (args.size() == 1) {
      if (head == "truncated_poly" || head == "tpoly") return truncated_poly(f, detail::parse_count(args[0], name));
      if (head == "matrix_algebra" || head == "m") return matrix_algebra(f, detail::parse_count(args[0], name));
      if (head == "chain") return chain(f, detail::parse_count(args[0], name));
      if (head == "indiscrete") return indiscrete(f, detail::parse_count(args[0], name));
      if (head == "discrete") return discrete(f, detail::parse_count(args[0], name));
    }
    throw Error(ErrorKind::UnknownName, "unknown catalog entry '" + name + "'");
  }
  if (name == "field" || name == "field_cat") return field_cat(f);
  if (name == "interval") return interval(f);
  if (name == "delta1" || name == "invertible_interval") return invertible_interval(f);
  for (const auto& [prefix, kind] : std::vector<std::pair<std::string, int>>{
           {"tpoly", 0}, {"indiscrete", 1}, {"discrete", 2}, {"chain", 3}, {"m", 4}}) {
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size() &&
        std::isdigit(static_cast<unsigned char>(name[prefix.size()]))) {
      const long n = detail::parse_count(name.substr(prefix.size()), name);
      switch (kind) {
        case 0: return truncated_poly(f, n);
        case 1: return indiscrete(f, n);
        case 2: return discrete(f, n);
        case 3: return chain(f, n);
        default: return matrix_algebra(f, n);
      }
    }
  }
  throw Error(ErrorKind::UnknownName, "unknown catalog entry '" + name + "'");
}

/// The named entries exercised by the test suites, in a fixed order.
inline std::vector<std::string> catalog_basic_names() {
  return {"field", "tpoly2", "tpoly3", "m2", "interval", "delta1", "indiscrete2", "chain2"};
}

inline std::vector<std::string> catalog_composite_names() {
  return {"op(interval)",         "op(tpoly3)",          "op(chain2)",       "tensor(interval,interval)",
          "tensor(field,m2)",     "tensor(tpoly2,tpoly2)", "tensor(interval,tpoly2)", "op(tensor(interval,interval))",
          "tensor(delta1,interval)", "tensor(indiscrete2,tpoly2)"};
}

}  // namespace lincat

#endif  // LINCAT_CATALOG_HPP
