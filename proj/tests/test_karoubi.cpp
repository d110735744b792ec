#include <catch_amalgamated.hpp>

#include "lincat/bimodule.hpp"
#include "lincat/catalog.hpp"
#include "lincat/karoubi.hpp"

using namespace lincat;

namespace {

const Field Q = Field::rationals();

// ((x,x), diag(1_x, 0))
KaroubiObject first_summand(const LinCat& c, std::size_t x) {
  KaroubiObject o = KaroubiObject::power(c, x, 2);
  o.projector[3] = c.zeros(c.dim(x, x));
  return o;
}

}  // namespace

TEST_CASE("building fragments", "[karoubi]") {
  const LinCat k = field_cat(Q);
  const auto frag = build_fragment(k, {KaroubiObject::unit(k, 0), first_summand(k, 0)});
  CHECK(frag.realized.dim(0, 0) == 1);
  CHECK(frag.realized.dim(0, 1) == 1);
  CHECK(frag.realized.dim(1, 0) == 1);
  CHECK(frag.realized.dim(1, 1) == 1);
  CHECK(frag.realized.object(1) == "K1");
  // the identity of ((x,x), diag(1,0)) is the projector itself
  CHECK(frag.to_blocks(1, 1, frag.realized.unit(1)) == Vector{Q.one(), Q.zero(), Q.zero(), Q.zero()});

  for (const auto& name : catalog_basic_names()) {
    INFO(name);
    const LinCat c = catalog(name, Q);
    std::vector<KaroubiObject> units;
    for (std::size_t x = 0; x < c.size(); ++x) units.push_back(KaroubiObject::unit(c, x));
    const auto f = build_fragment(c, units);
    CHECK(f.realized.graph().dims == c.graph().dims);
    CHECK(f.realized.tensors() == c.tensors());
  }

  KaroubiObject bad = KaroubiObject::power(k, 0, 2);
  bad.projector[1] = Vector{Q.one()};
  try {
    build_fragment(k, {bad});
    FAIL("expected NotIdempotent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIdempotent);
  }
  CHECK_THROWS_AS(build_fragment(k, {KaroubiObject{{1}, {Vector{Q.one()}}}}), Error);

  const auto z = build_fragment(k, {KaroubiObject::zero(), KaroubiObject::unit(k, 0)});
  CHECK(z.realized.dim(0, 0) == 0);
  CHECK(z.realized.dim(0, 1) == 0);
}

TEST_CASE("embedding into a fragment", "[karoubi]") {
  const LinCat k = field_cat(Q);
  const auto frag = build_fragment(k, {KaroubiObject::unit(k, 0), first_summand(k, 0)});
  const LinFunctor e = embed(k, frag);
  CHECK(e.is_valid());
  CHECK(is_fully_faithful(e));
  CHECK(morita_check(e).invertible);

  const auto only = build_fragment(k, {first_summand(k, 0)});
  try {
    embed(k, only);
    FAIL("expected MissingUnits");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::MissingUnits);
  }

  const LinCat iv = interval(Q);
  const auto fi = build_fragment(iv, {KaroubiObject::unit(iv, 0), KaroubiObject::unit(iv, 1)});
  CHECK(is_equivalence(embed(iv, fi)).equivalence == Verdict::Yes);
}

TEST_CASE("splitting projectors", "[karoubi]") {
  const LinCat k = field_cat(Q);
  const KaroubiObject two = KaroubiObject::power(k, 0, 2);
  const auto frag = build_fragment(k, {KaroubiObject::unit(k, 0), two});
  const LinCat& R = frag.realized;
  REQUIRE(R.dim(1, 1) == 4);
  const Vector p{Q.one(), Q.zero(), Q.zero(), Q.zero()};
  const auto s = split_projector(frag, 1, p);
  REQUIRE(s.split);
  CHECK(*s.image == 0);
  CHECK(*s.kernel == 0);
  CHECK(R.compose(0, 1, 0, s.image_r, s.image_s) == R.unit(0));
  CHECK(R.compose(1, 0, 1, s.image_s, s.image_r) == p);

  // identity: image is the object itself, no zero object for the kernel
  const auto id = split_projector(frag, 1, R.unit(1));
  CHECK_FALSE(id.split);
  REQUIRE(id.image);
  CHECK(*id.image == 1);
  CHECK_FALSE(id.kernel);

  const auto withzero = build_fragment(k, {KaroubiObject::zero(), KaroubiObject::unit(k, 0), two});
  const auto id2 = split_projector(withzero, 2, withzero.realized.unit(2));
  REQUIRE(id2.split);
  CHECK(*id2.image == 2);
  CHECK(*id2.kernel == 0);
  const auto zero = split_projector(withzero, 2, withzero.realized.zeros(4));
  REQUIRE(zero.split);
  CHECK(*zero.image == 0);

  CHECK_THROWS_AS(split_projector(frag, 1, Vector{Q.one(), Q.one(), Q.one(), Q.zero()}), Error);
  // the non-diagonal projector [[1,1],[0,0]] still splits through x
  const Vector skew{Q.one(), Q.one(), Q.zero(), Q.zero()};
  const auto sk = split_projector(frag, 1, skew);
  REQUIRE(sk.split);
  CHECK(R.compose(1, 0, 1, sk.image_s, sk.image_r) == skew);
}

TEST_CASE("karoubian within a fragment", "[karoubi]") {
  const LinCat k = field_cat(Q);
  const auto single = is_karoubian_within(build_fragment(k, {KaroubiObject::unit(k, 0)}));
  CHECK_FALSE(single.has_zero);
  CHECK_FALSE(single.karoubian);

  const auto frag = build_fragment(k, {KaroubiObject::zero(), KaroubiObject::unit(k, 0), KaroubiObject::power(k, 0, 2),
                                       first_summand(k, 0)});
  const auto rep = is_karoubian_within(frag);
  CHECK(rep.has_zero);
  CHECK(rep.unsplit.empty());
  CHECK(rep.tested > 4);
  // x ⊕ x² is not in the fragment
  CHECK_FALSE(rep.has_biproducts);

  const auto closed = is_karoubian_within(build_fragment(k, {KaroubiObject::zero(), KaroubiObject::unit(k, 0)}));
  CHECK_FALSE(closed.has_biproducts);
  CHECK(closed.unsplit.empty());

  const auto missing = is_karoubian_within(build_fragment(k, {KaroubiObject::zero(), KaroubiObject::power(k, 0, 2)}));
  CHECK_FALSE(missing.unsplit.empty());
  CHECK(missing.unsplit.front().first == 1);
}

TEST_CASE("embedding into a fragment with a split object is a Morita equivalence", "[karoubi][property]") {
  std::vector<std::string> names = catalog_basic_names();
  for (const auto& n : catalog_composite_names()) names.push_back(n);
  for (const auto& name : names) {
    INFO(name);
    const LinCat c = catalog(name, Q);
    std::vector<KaroubiObject> objs;
    for (std::size_t x = 0; x < c.size(); ++x) objs.push_back(KaroubiObject::unit(c, x));
    objs.push_back(KaroubiObject::power(c, 0, 2));
    const auto frag = build_fragment(c, objs);
    const LinFunctor e = embed(c, frag);
    CHECK(is_fully_faithful(e));
    CHECK(morita_check(e).invertible);
    const std::size_t o = c.size();
    const Vector p = frag.homs[o * frag.objects.size() + o].coordinates_or_throw(
        BlockSpace(c, objs[o].tuple, objs[o].tuple).flatten(first_summand(c, 0).projector));
    const auto s = split_projector(frag, o, p);
    REQUIRE(s.split);
    const LinCat& R = frag.realized;
    CHECK(R.compose(*s.image, o, *s.image, s.image_r, s.image_s) == R.unit(*s.image));
    CHECK(R.compose(o, *s.image, o, s.image_s, s.image_r) == p);
  }
}
