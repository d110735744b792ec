#include <catch_amalgamated.hpp>

#include "lincat/catalog.hpp"
#include "lincat/moduli.hpp"

using namespace lincat;

namespace {

const Field Q = Field::rationals();

Vector ints(std::initializer_list<long> xs, const Field& f = Q) {
  Vector v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

}  // namespace

TEST_CASE("emitted systems", "[moduli]") {
  const auto c1 = cat_system(GraphType({"0"}, {1}));
  CHECK(c1.variables == std::vector<std::string>{"m[0,0,0][1,1,1]", "u[0][1]"});
  // Ass is identically zero in dimension 1
  REQUIRE(c1.equations.size() == 2);
  CHECK(c1.labels == std::vector<std::string>{"IdL[0,0][1,1]", "IdR[0,0][1,1]"});
  CHECK(c1.equations[0].to_string(c1.variables) == "m[0,0,0][1,1,1]*u[0][1] - 1");
  CHECK(c1.equations[0] == c1.equations[1]);

  const auto k1 = com_system(1);
  CHECK(k1.equations == c1.equations);
  CHECK(com_system(2).equations.size() == ass_system(2).equations.size() + 2);

  const LinCat k = field_cat(Q);
  const auto b = bim_system(k, k, 1);
  CHECK(b.variables == std::vector<std::string>{"mu[1,1,1][1]"});
  REQUIRE(b.equations.size() == 1);
  CHECK(b.equations[0].to_string(b.variables) == "mu[1,1,1][1]*mu[1,1,1][1] - mu[1,1,1][1]");

  CHECK_THROWS_AS(ass_system(0), Error);
  CHECK_THROWS_AS(bim_system(interval(Q), k, 1), Error);
  CHECK_THROWS_AS(fct_system(k, k, {1}), Error);
  CHECK_THROWS_AS(cat_system(GraphType({"a b"}, {1})), Error);

  // byte-stable text
  const LinCat iv = interval(Q);
  CHECK(cat_system(iv.graph()).to_text() == cat_system(iv.graph()).to_text());
  CHECK(bim_system(truncated_poly(Q, 2), k, 2).to_text() == bim_system(truncated_poly(Q, 2), k, 2).to_text());
}

TEST_CASE("the text format round-trips", "[moduli]") {
  const LinCat t2 = truncated_poly(Q, 2);
  std::vector<PolySystem> systems{cat_system(interval(Q).graph()), com_system(2), bim_system(t2, field_cat(Q), 2),
                                  fct_system(t2, t2, {0})};
  for (const auto& s : systems) {
    INFO(s.kind);
    const PolySystem back = PolySystem::parse(s.to_text(), Q);
    CHECK(back.kind == s.kind);
    CHECK(back.variables == s.variables);
    CHECK(back.equations == s.equations);
    CHECK(back.labels == s.labels);
  }
  const auto hand = PolySystem::parse("# vars: x[1] y[1]\n-x[1]*y[1] + 2*x[1] - 1/2\n3 * y[1]  # lin\n", Q);
  REQUIRE(hand.equations.size() == 2);
  CHECK(hand.equations[0].evaluate(Q, ints({1, 0})) == Q.parse("3/2"));
  CHECK(hand.labels[1] == "lin");
  CHECK_THROWS_AS(PolySystem::parse("x[1]\n", Q), Error);
  CHECK_THROWS_AS(PolySystem::parse("# vars: x[1]\nz[1]\n", Q), Error);
  CHECK_THROWS_AS(PolySystem::parse("# vars: x[1]\nx[1] + \n", Q), Error);
}

TEST_CASE("catalog categories are points of their systems", "[moduli][property]") {
  std::vector<std::string> names = catalog_basic_names();
  for (const auto& n : catalog_composite_names()) names.push_back(n);
  for (const auto& name : names) {
    INFO(name);
    const LinCat c = catalog(name, Q);
    const auto s = cat_system(c.graph());
    const Vector p = category_point(c);
    CHECK(s.residuals(p).empty());
    const LinCat back = category_from_point(c.graph(), Q, p);
    CHECK(back.tensors() == c.tensors());
  }
  for (const auto& name : {"field", "tpoly2", "m2"}) {
    const LinCat c = catalog(name, Q);
    CHECK(bim_system(c, c, static_cast<long>(c.dim(0, 0))).residuals(bimodule_point(Bimodule::regular(c))).empty());
  }
}

TEST_CASE("functor and natural transformation systems", "[moduli]") {
  auto iv = share(interval(Q));
  auto id = LinFunctor::identity(iv);
  const auto f = fct_system(*iv, *iv, {0, 1});
  Vector p;
  for (const auto& m : id.matrices()) p.insert(p.end(), m.begin(), m.end());
  CHECK(f.residuals(p).empty());
  p[0] = Q.from_int(2);
  CHECK_FALSE(f.residuals(p).empty());

  // natural endomorphisms of the identity of the interval: the center, dim 1
  const auto tn = tn_system(id, id);
  CHECK(tn.variables.size() == 2);
  CHECK(tangent_space(tn, ints({0, 0})).dim() == 1);
  const auto m2 = share(matrix_algebra(Q, 2));
  const auto tm = tn_system(LinFunctor::identity(m2), LinFunctor::identity(m2));
  CHECK(kernel(jacobian(tm, Vector(4, Q.zero()))).dim() == center(*m2).basis.dim());
}

TEST_CASE("tangent spaces", "[moduli]") {
  const auto c1 = cat_system(GraphType({"0"}, {1}));
  const Subspace t = tangent_space(c1, ints({1, 1}));
  REQUIRE(t.dim() == 1);
  const auto& v = t.basis()[0];
  CHECK(v[0] + v[1] == Q.zero());
  CHECK(tangent_space(com_system(1), ints({1, 1})).dim() == 1);
  try {
    tangent_space(c1, ints({1, 2}));
    FAIL("expected NotAPoint");
  } catch (const NotAPoint& e) {
    CHECK(e.kind() == ErrorKind::NotAPoint);
    CHECK(e.residuals().size() == 2);
  }
}

TEST_CASE("normalized cocycles lie in the tangent space", "[moduli]") {
  const auto k = check_hz2_inclusion(field_cat(Q));
  CHECK(k.dim_normalized == 0);
  CHECK(k.dim_tangent == 1);
  CHECK(k.inclusion);

  const auto t = check_hz2_inclusion(truncated_poly(Q, 2));
  CHECK(t.inclusion);
  CHECK(t.dim_normalized >= 1);
  // μ(x,x) = 1 is normalized
  Vector xx(8, Q.zero());
  xx[(1 * 2 + 1) * 2] = Q.one();
  CHECK(Subspace::span(Q, 8, t.normalized).contains(xx));

  CHECK(check_hz2_inclusion(interval(Q)).inclusion);
}

TEST_CASE("tangent dimension bounds the normalized cocycles", "[moduli][property]") {
  std::vector<std::string> names = catalog_basic_names();
  for (const auto& n : catalog_composite_names()) names.push_back(n);
  for (const auto& name : names) {
    INFO(name);
    const LinCat c = catalog(name, Q);
    if (c.total_dim() > 8) continue;
    const auto r = check_hz2_inclusion(c);
    CHECK(r.inclusion);
    CHECK(r.dim_tangent >= r.dim_normalized);
    CHECK(r.dim_normalized <= r.dim_hz2);
  }
}

TEST_CASE("enumerating points over small fields", "[moduli]") {
  const GraphType one({"0"}, {1});
  const auto c1 = cat_system(one);
  for (const auto& [p, count] : {std::pair<std::uint64_t, std::size_t>{2, 1}, {3, 2}, {5, 4}}) {
    const auto r = enumerate_points(c1, p);
    CHECK(r.points.size() == count);
    for (const auto& pt : r.points) CHECK(category_from_point(one, Field::prime(p), pt).is_valid());
  }
  CHECK(enumerate_points(com_system(1), 2).points.size() == 1);

  // unital algebras of dimension 2 over F_2 with this basis; each re-validates
  const GraphType two({"0"}, {2});
  const auto r2 = enumerate_points(cat_system(two), 2);
  CHECK(r2.searched == (1u << 10));
  CHECK_FALSE(r2.points.empty());
  for (const auto& pt : r2.points) CHECK(category_from_point(two, Field::prime(2), pt).is_valid());
  CHECK(enumerate_points(com_system(2), 2).points.size() == r2.points.size());

  CHECK_THROWS_AS(enumerate_points(cat_system(two), 5, 1000), Error);
  try {
    enumerate_points(ass_system(3), 2);
    FAIL("expected SearchTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchTooLarge);
  }
}
