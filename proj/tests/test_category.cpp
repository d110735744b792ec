#include <catch_amalgamated.hpp>

#include "lincat/catalog.hpp"
#include "lincat/constructions.hpp"

using namespace lincat;

namespace {

const Field Q = Field::rationals();

bool has_equation(const std::vector<Violation>& vs, const std::string& prefix) {
  for (const auto& v : vs)
    if (v.equation.rfind(prefix, 0) == 0) return true;
  return false;
}

std::vector<std::string> all_names() {
  auto v = catalog_basic_names();
  for (const auto& c : catalog_composite_names()) v.push_back(c);
  return v;
}

}  // namespace

TEST_CASE("one-object field category validates and a zero unit does not", "[category]") {
  CHECK_NOTHROW(LinCat::make(Q, GraphType({"0"}, {1}), {Vector{Q.one()}}, {Vector{Q.one()}}));
  try {
    LinCat::make(Q, GraphType({"0"}, {1}), {Vector{Q.one()}}, {Vector{Q.zero()}});
    FAIL("expected an axiom violation");
  } catch (const AxiomViolation& e) {
    CHECK(has_equation(e.violations(), "Id"));
    CHECK(e.violations().front().residual == "-1");
  }
}

TEST_CASE("matrix units of M2 satisfy the axioms", "[category]") {
  const LinCat m2 = matrix_algebra(Q, 2);
  CHECK(m2.dim(0, 0) == 4);
  CHECK(m2.is_valid());
  // e12 e21 = e11, e21 e12 = e22, e11 e22 = 0
  CHECK(m2.coeff(0, 0, 0, 1, 2, 0).is_one());
  CHECK(m2.coeff(0, 0, 0, 2, 1, 3).is_one());
  CHECK(m2.basis_product(0, 0, 0, 0, 3).empty());
}

TEST_CASE("shape and field errors", "[category]") {
  CHECK_THROWS_AS(LinCat::make(Q, GraphType({"0"}, {1}), {Vector{Q.one(), Q.one()}}, {Vector{Q.one()}}), Error);
  CHECK_THROWS_AS(LinCat::make(Q, GraphType({"0"}, {1}), {Vector{Q.one()}}, {Vector{}}), Error);
  const Field f3 = Field::prime(3);
  try {
    LinCat::make(Q, GraphType({"0"}, {1}), {Vector{f3.one()}}, {Vector{Q.one()}});
    FAIL("expected a field mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
  CHECK_THROWS_AS(GraphType({"a", "a"}, {1, 0, 0, 1}), Error);
}

TEST_CASE("broken associativity is reported with its indices", "[category]") {
  LinCat t = truncated_poly(Q, 3);
  auto mult = t.tensors();
  mult[0][(1 * 3 + 2) * 3 + 0] = Q.one();  // x·x² = 1 but x²·x = 0
  auto vs = LinCat::make_unchecked(Q, t.graph(), mult, t.units()).violations();
  CHECK_FALSE(vs.empty());
  CHECK(has_equation(vs, "Ass"));
  for (const auto& v : vs)
    if (v.equation == "Ass") CHECK(v.indices.size() == 8);
  const Violation& first = vs.front();
  CHECK(first.equation == "Ass");
  CHECK(first.indices == std::vector<std::size_t>{0, 0, 0, 0, 2, 2, 2, 1});
}

TEST_CASE("catalog entries", "[catalog]") {
  const LinCat iv = interval(Q);
  CHECK(iv.objects() == std::vector<std::string>{"0", "1"});
  CHECK(iv.dim(0, 0) == 1);
  CHECK(iv.dim(1, 1) == 1);
  CHECK(iv.dim(0, 1) == 1);
  CHECK(iv.dim(1, 0) == 0);

  const LinCat t2 = truncated_poly(Q, 2);
  CHECK(t2.dim(0, 0) == 2);
  CHECK(t2.basis_product(0, 0, 0, 1, 1).empty());

  const Field f3 = Field::prime(3);
  const LinCat d1 = invertible_interval(f3);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(d1.dim(x, y) == 1);
  CHECK(d1.coeff(0, 1, 0, 0, 0, 0).is_one());
  CHECK(d1.coeff(1, 0, 1, 0, 0, 0).is_one());

  CHECK(chain(Q, 2).size() == 3);
  CHECK(chain(Q, 2).dim(0, 2) == 1);
  CHECK(chain(Q, 2).dim(2, 0) == 0);
  CHECK(catalog("tpoly3", Q) == truncated_poly(Q, 3));
  CHECK(catalog("truncated_poly(3)", Q) == truncated_poly(Q, 3));
  CHECK(catalog("matrix_algebra(2)", Q) == catalog("m2", Q));
  CHECK(catalog("invertible_interval", Q) == catalog("delta1", Q));
  CHECK(catalog("field_cat", Q) == field_cat(Q));

  for (const char* bad : {"nonsense", "tpoly0", "m99", "op(nonsense)", "tensor(field)", "tpolyx"}) {
    try {
      catalog(bad, Q);
      FAIL(bad);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::UnknownName || e.kind() == ErrorKind::BadParams));
    }
  }
}

TEST_CASE("every catalog entry validates over Q and F_p", "[catalog][property]") {
  for (const auto& name : all_names()) {
    INFO(name);
    CHECK(catalog(name, Q).is_valid());
    CHECK(catalog(name, Field::prime(2)).is_valid());
  }
}

TEST_CASE("matrix ring examples", "[constructions]") {
  const MatrixRing r = matrix_ring(interval(Q));
  CHECK(r.algebra.dim(0, 0) == 3);
  CHECK(r.algebra.is_valid());
  CHECK(r.family.elements.size() == 2);
  CHECK(family_violations(r.algebra, r.family).empty());

  const MatrixRing f = matrix_ring(field_cat(Q));
  CHECK(f.algebra == field_cat(Q));
  CHECK(f.family.elements.size() == 1);

  const MatrixRing i2 = matrix_ring(indiscrete(Q, 2));
  CHECK(i2.algebra.dim(0, 0) == 4);
  // blocks (0,0),(0,1),(1,0),(1,1) correspond to e11,e12,e21,e22
  CHECK(i2.algebra == matrix_algebra(Q, 2));
}

TEST_CASE("category from idempotents examples", "[constructions]") {
  const MatrixRing r = matrix_ring(interval(Q));
  const IdempotentCategory c = category_from_idempotents(r.algebra, r.family);
  CHECK(c.category.dim(0, 0) == 1);
  CHECK(c.category.dim(0, 1) == 1);
  CHECK(c.category.dim(1, 0) == 0);
  CHECK(c.category.dim(1, 1) == 1);
  CHECK(c.category == interval(Q));

  const LinCat t3 = truncated_poly(Q, 3);
  const IdempotentCategory single = category_from_idempotents(t3, IdempotentFamily{{t3.unit(0)}});
  CHECK(single.category == t3);

  const LinCat m2 = matrix_algebra(Q, 2);
  const IdempotentFamily diag{{unit_vector(Q, 4, 0), unit_vector(Q, 4, 3)}};
  const IdempotentCategory ind = category_from_idempotents(m2, diag);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(ind.category.dim(x, y) == 1);
  CHECK(ind.category == indiscrete(Q, 2));

  const IdempotentFamily bad{{unit_vector(Q, 4, 0), unit_vector(Q, 4, 0)}};
  try {
    category_from_idempotents(m2, bad);
    FAIL("expected InvalidFamily");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidFamily);
  }
}

TEST_CASE("matrix ring round trips preserve dimensions", "[constructions][property]") {
  for (const auto& name : all_names()) {
    INFO(name);
    const LinCat c = catalog(name, Q);
    const MatrixRing r = matrix_ring(c);
    CHECK(r.algebra.dim(0, 0) == c.total_dim());
    CHECK(r.algebra.is_valid());
    const IdempotentCategory back = category_from_idempotents(r.algebra, r.family, c.objects());
    CHECK(back.category.graph() == c.graph());
    CHECK(matrix_ring(back.category).algebra.dim(0, 0) == c.total_dim());
  }
}

TEST_CASE("opposite examples and involution", "[constructions]") {
  CHECK(opposite(field_cat(Q)) == field_cat(Q));
  const LinCat op = opposite(interval(Q));
  CHECK(op.dim(1, 0) == 1);
  CHECK(op.dim(0, 1) == 0);
  CHECK(op.is_valid());
  const LinCat m2 = matrix_algebra(Q, 2);
  CHECK(opposite(opposite(m2)) == m2);
  for (const auto& name : all_names()) {
    const LinCat c = catalog(name, Q);
    CHECK(opposite(opposite(c)) == c);
    CHECK(opposite(c).is_valid());
  }
}

TEST_CASE("tensor product examples", "[constructions]") {
  const LinCat iv = interval(Q);
  const LinCat ii = tensor_product(iv, iv);
  CHECK(ii.size() == 4);
  CHECK(ii.objects()[3] == "1|1");
  CHECK(ii.dim(ii.index("0|0"), ii.index("1|1")) == 1);
  CHECK(ii.dim(ii.index("1|0"), ii.index("0|1")) == 0);
  CHECK(ii.is_valid());

  const LinCat m2 = matrix_algebra(Q, 2);
  const LinCat mm = tensor_product(m2, m2);
  CHECK(mm.size() == 1);
  CHECK(mm.dim(0, 0) == 16);
  CHECK(mm.is_valid());

  const LinCat fc = tensor_product(field_cat(Q), truncated_poly(Q, 3));
  CHECK(fc.tensors() == truncated_poly(Q, 3).tensors());
  CHECK(fc.units() == truncated_poly(Q, 3).units());

  CHECK_THROWS_AS(tensor_product(field_cat(Q), field_cat(Field::prime(2))), Error);

  for (const auto& a : catalog_basic_names())
    for (const auto& b : {"interval", "tpoly2"}) {
      const LinCat x = catalog(a, Q), y = catalog(b, Q);
      CHECK(tensor_product(x, y).total_dim() == x.total_dim() * y.total_dim());
    }
}

TEST_CASE("disjoint union and full subcategories", "[constructions]") {
  const LinCat d = discrete(Q, 2);
  CHECK(d.dim(0, 1) == 0);
  CHECK(d.is_valid());
  CHECK(disjoint_union(field_cat(Q), rename_objects(field_cat(Q), {"1"})) == d);
  CHECK_THROWS_AS(disjoint_union(interval(Q), field_cat(Q)), Error);
  const LinCat sub = full_subcategory(chain(Q, 2), {0, 2});
  CHECK(sub.dim(0, 1) == 1);
  CHECK(sub.is_valid());
  CHECK(full_subcategory(interval(Q), {0}) == field_cat(Q));
}
