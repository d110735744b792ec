#include <catch_amalgamated.hpp>

#include <random>

#include "lincat/catalog.hpp"
#include "lincat/hochschild.hpp"
#include "lincat/lifting.hpp"

using namespace lincat;

namespace {

const Field Q = Field::rationals();

Dual d(long a, long b) { return {Q.from_int(a), Q.from_int(b)}; }

Scalar small(std::mt19937_64& rng) { return Q.from_int(static_cast<long>(rng() % 7) - 3); }

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = small(rng);
    if (rank(m) == n) return m;
  }
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(*solve(m, unit_vector(Q, n, j)));
  return Matrix::from_columns(Q, n, cols);
}

// Random idempotent with random ε-part: S·diag(1..1,0..0)·S⁻¹ + ε·R.
DualMatrix perturbed_idempotent(std::size_t n, std::mt19937_64& rng) {
  const Matrix s = random_invertible(n, rng);
  Matrix diag(Q, n, n);
  const std::size_t r = rng() % (n + 1);
  for (std::size_t i = 0; i < r; ++i) diag(i, i) = Q.one();
  Matrix eps(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eps(i, j) = small(rng);
  return DualMatrix::from_parts(s * diag * inverse(s), eps);
}

BasicIdempotentFamily<Dual> perturb(const IdempotentFamily& fam, std::mt19937_64& rng) {
  BasicIdempotentFamily<Dual> out;
  for (const auto& p : fam.elements) {
    Vector eps;
    for (std::size_t i = 0; i < p.size(); ++i) eps.push_back(small(rng));
    out.elements.push_back(to_dual(p, eps));
  }
  return out;
}

IdempotentFamily matrix_units(std::size_t n) {
  IdempotentFamily f;
  for (std::size_t i = 0; i < n; ++i) f.elements.push_back(unit_vector(Q, n * n, i * n + i));
  return f;
}

}  // namespace

TEST_CASE("lifting single idempotents", "[lifting]") {
  DualMatrix a(Q, 2, 2);
  a(0, 0) = d(1, 0);
  a(0, 1) = d(0, 1);
  CHECK(lift_idempotent(a) == a);

  DualMatrix b(Q, 2, 2);
  b(0, 0) = d(1, 1);
  DualMatrix expected(Q, 2, 2);
  expected(0, 0) = d(1, 0);
  CHECK(lift_idempotent(b) == expected);

  CHECK(lift_idempotent(DualMatrix(Q, 3, 3)) == DualMatrix(Q, 3, 3));

  DualMatrix c(Q, 2, 2);
  c(0, 0) = d(2, 0);
  try {
    lift_idempotent(c);
    FAIL("expected NotIdempotentModEps");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIdempotentModEps);
  }
  CHECK_THROWS_AS(lift_idempotent(DualMatrix(Q, 2, 3)), Error);
}

TEST_CASE("lifted idempotents are exact and congruent", "[lifting][property]") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const DualMatrix p = perturbed_idempotent(n, rng);
    const DualMatrix q = lift_idempotent(p);
    CHECK(q * q == q);
    CHECK(q.constant_part() == p.constant_part());
    const DualMatrix k = q - p;
    CHECK(k * p == p * k);
  }
}

TEST_CASE("lifting orthogonal families", "[lifting]") {
  // p′₁ = e₁₁ + ε e₁₂, p′₂ = e₂₂ − ε e₁₂
  DualMatrix p1(Q, 2, 2), p2(Q, 2, 2);
  p1(0, 0) = d(1, 0);
  p1(0, 1) = d(0, 1);
  p2(1, 1) = d(1, 0);
  p2(0, 1) = d(0, -1);
  const auto q = lift_orthogonal_family({p1, p2});
  REQUIRE(q.size() == 2);
  CHECK(q[0] * q[1] == DualMatrix(Q, 2, 2));
  CHECK(q[1] * q[0] == DualMatrix(Q, 2, 2));
  CHECK(q[0] + q[1] == DualMatrix::identity(Q, 2));
  CHECK(q[0].constant_part() == p1.constant_part());

  // an exact family comes back unchanged
  DualMatrix e1(Q, 2, 2), e2(Q, 2, 2);
  e1(0, 0) = d(1, 0);
  e2(1, 1) = d(1, 0);
  CHECK(lift_orthogonal_family({e1, e2}) == std::vector<DualMatrix>{e1, e2});

  // a single element must become 1
  DualMatrix one = DualMatrix::identity(Q, 2);
  one(0, 1) = d(0, 5);
  CHECK(lift_orthogonal_family({one}) == std::vector<DualMatrix>{DualMatrix::identity(Q, 2)});

  CHECK_THROWS_AS(lift_orthogonal_family({e1, e1}), Error);
  CHECK_THROWS_AS(lift_orthogonal_family({e1}), Error);
}

TEST_CASE("perturbed complete families lift exactly", "[lifting][property]") {
  std::mt19937_64 rng(99);
  const DualLinCat m2 = extend_to_duals(matrix_algebra(Q, 2));
  const MatrixRing ring = matrix_ring(interval(Q));
  const DualLinCat iv = extend_to_duals(ring.algebra);
  for (int t = 0; t < 20; ++t) {
    for (const auto& [alg, fam] : {std::pair{&m2, matrix_units(2)}, std::pair{&iv, ring.family}}) {
      const auto lifts = perturb(fam, rng);
      const auto q = lift_orthogonal_family(*alg, lifts);
      const DualAlgebraRing R{alg};
      CHECK(dual_family_violations(R, q.elements).empty());
      for (std::size_t i = 0; i < q.elements.size(); ++i) CHECK(constant_part(q.elements[i]) == fam.elements[i]);
    }
  }
}

TEST_CASE("the one-sided correction is not enough for three idempotents", "[lifting]") {
  std::mt19937_64 rng(5);
  const DualLinCat m3 = extend_to_duals(matrix_algebra(Q, 3));
  const DualAlgebraRing R{&m3};
  std::size_t one_sided_failures = 0;
  for (int t = 0; t < 10; ++t) {
    const auto lifts = perturb(matrix_units(3), rng);
    const auto two = lift_family_candidate(R, lifts.elements, FamilyCorrection::TwoSided);
    const auto one = lift_family_candidate(R, lifts.elements, FamilyCorrection::OneSided);
    CHECK(dual_family_violations(R, two).empty());
    if (!dual_family_violations(R, one).empty()) ++one_sided_failures;
  }
  CHECK(one_sided_failures > 0);
}

TEST_CASE("projective presentations", "[lifting]") {
  const DualLinCat m2 = extend_to_duals(matrix_algebra(Q, 2));
  const Vector e11 = unit_vector(Q, 4, 0);
  CHECK(lift_projective_presentation(m2, e11) == embed(e11));

  const LinCat t2 = truncated_poly(Q, 2);
  Vector mu = zeros(Q, 8);
  mu[(1 * 2 + 1) * 2] = Q.one();
  const DualLinCat twisted = deform(t2, {2, mu}).law;
  CHECK(lift_projective_presentation(twisted, t2.unit(0)) == twisted.unit(0));

  // a coboundary twist of M2 moves e11 off idempotence; the lift repairs it
  std::mt19937_64 rng(3);
  const LinCat M2 = matrix_algebra(Q, 2);
  Vector f;
  for (std::size_t i = 0; i < CochainSpace(M2, 1).dim(); ++i) f.push_back(small(rng));
  const DualLinCat D = deform(M2, differential(M2, {1, f})).law;
  const DualVector q = lift_projective_presentation(D, e11);
  CHECK(D.compose(0, 0, 0, q, q) == q);
  CHECK(constant_part(q) == e11);

  CHECK_THROWS_AS(lift_projective_presentation(m2, Vector{Q.one(), Q.one(), Q.one(), Q.zero()}), Error);
}
