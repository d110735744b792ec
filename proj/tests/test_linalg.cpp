#include <catch_amalgamated.hpp>

#include <random>

#include "lincat/linalg.hpp"

using namespace lincat;

namespace {

Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols, std::initializer_list<long> vals) {
  Matrix m(f, rows, cols);
  std::size_t i = 0;
  for (long v : vals) {
    m(i / cols, i % cols) = f.from_int(v);
    ++i;
  }
  return m;
}

Vector ints(const Field& f, std::initializer_list<long> vals) {
  Vector v;
  for (long x : vals) v.push_back(f.from_int(x));
  return v;
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias) {
  std::uniform_int_distribution<int> d(-4, 4), z(0, 9);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (z(rng) >= zero_bias)
        m(i, j) = f.is_rational() ? f.from_mpq(mpq_class(d(rng), 1 + (z(rng) % 3))) : f.from_int(d(rng));
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic stays exact", "[scalar]") {
  const Field q = Field::rationals();
  const Scalar a = q.parse("1/3"), b = q.parse("-2/6");
  CHECK((a + b).is_zero());
  CHECK((a * q.from_int(3)).is_one());
  CHECK(q.parse("10/4").to_string() == "5/2");
  CHECK(q.parse("-7").to_string() == "-7");

  const Scalar big = q.parse("123456789012345678901234567890");
  CHECK((big - big).is_zero());
  CHECK((big / big).is_one());
  CHECK((big * big.inverse()).is_one());

  const Scalar max = Scalar::rational(std::numeric_limits<std::int64_t>::max());
  const Scalar sum = max + max;
  CHECK(sum.to_string() == "18446744073709551614");
  CHECK((sum - max) == max);
}

TEST_CASE("prime field residues", "[scalar]") {
  const Field f = Field::prime(7);
  CHECK(f.from_int(-1).residue_value() == 6);
  CHECK((f.from_int(3) * f.from_int(5)).residue_value() == 1);
  CHECK((f.from_int(3).inverse() * f.from_int(3)).is_one());
  CHECK(f.parse("1/2").residue_value() == 4);
  CHECK_THROWS_AS(Field::prime(8), Error);
  CHECK_THROWS_AS(f.parse("1/7"), Error);
  CHECK_THROWS_AS(f.from_int(1) + Field::prime(5).from_int(1), Error);
  CHECK_THROWS_AS(f.from_int(1) + Field::rationals().from_int(1), Error);
}

TEST_CASE("rank examples", "[linalg]") {
  const Field q = Field::rationals(), f2 = Field::prime(2);
  CHECK(rank(Matrix::identity(q, 3)) == 3);
  CHECK(rank(from_ints(f2, 2, 2, {1, 1, 1, 1})) == 1);
  CHECK(rank(from_ints(q, 2, 2, {2, 4, 1, 2})) == 1);
  CHECK(rank(Matrix(q, 0, 5)) == 0);
  CHECK(rank(from_ints(Field::prime(3), 2, 2, {1, 2, 2, 1})) == 1);
  CHECK(rank(from_ints(q, 2, 2, {1, 2, 2, 1})) == 2);
}

TEST_CASE("kernel examples", "[linalg]") {
  const Field q = Field::rationals(), f2 = Field::prime(2);
  auto k = kernel_basis(from_ints(f2, 1, 2, {1, 1}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == ints(f2, {1, 1}));
  CHECK(kernel_basis(Matrix::identity(q, 2)).empty());
  CHECK(kernel_basis(Matrix(q, 2, 3)).size() == 3);
}

TEST_CASE("solve examples", "[linalg]") {
  const Field q = Field::rationals();
  auto x = solve(Matrix::identity(q, 2), ints(q, {5, 7}));
  REQUIRE(x);
  CHECK(*x == ints(q, {5, 7}));
  CHECK_FALSE(solve(from_ints(q, 2, 1, {1, 1}), ints(q, {1, 2})));
  auto h = solve(from_ints(q, 1, 1, {2}), ints(q, {1}));
  REQUIRE(h);
  CHECK((*h)[0] == q.parse("1/2"));
  CHECK_THROWS_AS(solve(Matrix::identity(q, 2), ints(q, {1})), Error);
}

TEST_CASE("rank-nullity and exact kernels on random matrices", "[linalg][property]") {
  std::mt19937_64 rng(7);
  for (const Field& f : {Field::rationals(), Field::prime(2), Field::prime(5), Field::prime(1000003)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      const Matrix m = random_matrix(f, r, c, rng, static_cast<int>(rng() % 8));
      const auto ker = kernel_basis(m);
      CHECK(rank(m) + ker.size() == c);
      for (const auto& v : ker) CHECK(is_zero(m.apply(v)));
      CHECK(rank(m) == rank(m.transpose()));
      CHECK(kernel_basis(m) == ker);
    }
  }
}

TEST_CASE("solve returns exact solutions exactly when consistent", "[linalg][property]") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::rationals(), Field::prime(3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      const Matrix m = random_matrix(f, r, c, rng, 4);
      Vector x0 = zeros(f, c);
      for (auto& s : x0) s = f.from_int(static_cast<long>(rng() % 9) - 4);
      const Vector b = m.apply(x0);
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m.apply(*x) == b);

      Vector b2 = b;
      b2[rng() % r] += f.one();
      auto y = solve(m, b2);
      const Subspace im = image(m);
      CHECK(y.has_value() == im.contains(b2));
      if (y) CHECK(m.apply(*y) == b2);
    }
  }
}

TEST_CASE("subspace coordinates and canonical bases", "[linalg]") {
  const Field q = Field::rationals();
  const Subspace s = Subspace::span(q, 3, {ints(q, {1, 1, 0}), ints(q, {2, 2, 0}), ints(q, {0, 1, 1})});
  CHECK(s.dim() == 2);
  const Subspace t = Subspace::span(q, 3, {ints(q, {0, 1, 1}), ints(q, {1, 2, 1})});
  CHECK(s == t);
  const Vector v = ints(q, {3, 5, 2});
  auto c = s.coordinates(v);
  REQUIRE(c);
  CHECK(s.combine(*c) == v);
  CHECK_FALSE(s.coordinates(ints(q, {0, 0, 1})));
  CHECK(s.free_columns() == std::vector<std::size_t>{2});
}

TEST_CASE("fraction-free elimination handles growing entries", "[linalg]") {
  const Field q = Field::rationals();
  const std::size_t n = 8;
  Matrix h(q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = Scalar::rational(1, static_cast<long>(i + j + 1));
  CHECK(rank(h) == n);
  const auto e = reduced_row_echelon(h);
  CHECK(e.reduced == Matrix::identity(q, n));
  Vector b = zeros(q, n);
  b[0] = q.one();
  auto x = solve(h, b);
  REQUIRE(x);
  CHECK(h.apply(*x) == b);
  CHECK((*x)[0] == q.from_int(64));
}

TEST_CASE("sparse elimination agrees with dense elimination", "[linalg][property]") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      const Matrix m = random_matrix(f, r, c, rng, 6);
      SparseMatrix s(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) s.add(i, j, m(i, j));
      s.finalize();
      CHECK(s.dense() == m);
      CHECK(kernel(s) == kernel(m));
      CHECK(image(s) == image(m));
      CHECK(s.transpose().dense() == m.transpose());
    }
  }
}
