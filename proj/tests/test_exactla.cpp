#include <random>

#include "corext/errors.hpp"
#include "corext/linalg.hpp"
#include "doctest.h"

using namespace corext;

namespace {

const Field QQ = Field::rationals();

Matrix mat(std::vector<std::vector<int64_t>> rows, Field f = QQ) {
  size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), c, f);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
  return m;
}

Vec vec(std::vector<int64_t> xs, Field f = QQ) {
  Vec v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

Matrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, Field f, int density = 2) {
  Matrix m(r, c, f);
  std::uniform_int_distribution<int> val(-3, 3), keep(0, density);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m(i, j) = f.from_int(val(rng));
  return m;
}

Matrix elementary(size_t n, size_t i, size_t j) {
  Matrix m(n, n, QQ);
  m(i, j) = 1;
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
  Scalar a = Scalar::rational(1, 3), b = Scalar::rational(1, 6);
  CHECK(a + b == Scalar::rational(1, 2));
  CHECK(a * b == Scalar::rational(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK((a - a).is_zero());
  CHECK(Scalar::rational(2, -4).to_string() == "-1/2");

  // Values beyond 64 bits spill to GMP and come back.
  Scalar big(INT64_MAX);
  Scalar sq = big * big;
  CHECK(sq.to_string() == mpz_class(mpz_class(INT64_MAX) * INT64_MAX).get_str());
  CHECK(sq / big == big);
  CHECK(((big + 1) - 1) == big);
}

TEST_CASE("prime field scalars") {
  Field f7 = Field::prime(7);
  Scalar three = f7.from_int(3);
  CHECK(three * three.inverse() == f7.one());
  CHECK((three + f7.from_int(4)).is_zero());
  CHECK(f7.from_int(-1).to_string() == "6 mod 7");
  // Rationals reduce on contact with residues.
  CHECK(Scalar::rational(1, 2) * f7.from_int(2) == f7.one());
  CHECK(Scalar::parse("3/2", f7) == f7.from_int(5));
  CHECK(Scalar::parse("12 mod 7", f7) == f7.from_int(5));
  CHECK_THROWS_AS(Field::prime(8), UsageError);
  CHECK_THROWS_AS(Scalar::parse("1/7", f7), ParseError);
  CHECK_THROWS_AS(Scalar::parse("2 mod 5", f7), ParseError);
}

TEST_CASE("scalar parse and print round trip") {
  for (std::string s : {"0", "-3", "22/7", "-5/12", "123456789012345678901234567891/2"})
    CHECK(Scalar::parse(s, QQ).to_string() == s);
  CHECK_THROWS_AS(Scalar::parse("", QQ), ParseError);
  CHECK_THROWS_AS(Scalar::parse("1/0", QQ), ParseError);
  CHECK_THROWS_AS(Scalar::parse("x", QQ), ParseError);
}

TEST_CASE("field axioms on random rationals and residues") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> d(-50, 50);
  for (Field f : {QQ, Field::prime(7), Field::prime(101)}) {
    for (int trial = 0; trial < 200; ++trial) {
      auto pick = [&] {
        int64_t den = 0;
        while (den == 0 || (f.characteristic() && den % f.characteristic() == 0)) den = d(rng);
        return Scalar::rational(d(rng), den).in_field(f);
      };
      Scalar x = pick(), y = pick(), z = pick();
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x + y == y + x);
      if (!x.is_zero()) CHECK(x * x.inverse() == f.one());
    }
  }
}

TEST_CASE("solve_linear") {
  CHECK(*solve_linear(Matrix::identity(3, QQ), vec({1, 2, 3})) == vec({1, 2, 3}));
  CHECK_FALSE(solve_linear(mat({{1, 1}, {2, 2}}), vec({1, 3})).has_value());
  CHECK(*solve_linear(mat({{2}}), vec({1})) == Vec{Scalar::rational(1, 2)});
  CHECK_THROWS_AS(solve_linear(mat({{1, 0}}), vec({1, 2})), UsageError);
  // Free variables are set to zero.
  CHECK(*solve_linear(mat({{1, 1}}), vec({5})) == vec({5, 0}));
}

TEST_CASE("kernel and image") {
  CHECK(kernel(Matrix(3, 3, QQ)).dim() == 3);
  CHECK(kernel(Matrix::identity(3, QQ)).dim() == 0);
  Subspace k = kernel(mat({{1, 1, 0}, {0, 0, 1}}));
  CHECK(k.dim() == 1);
  CHECK(k == Subspace::span(3, {vec({1, -1, 0})}, QQ));

  CHECK(image(Matrix::identity(2, QQ)) == Subspace::full(2, QQ));
  CHECK(image(Matrix(2, 2, QQ)).dim() == 0);
  Subspace im = image(mat({{1, 2}, {2, 4}}));
  CHECK(im.dim() == 1);
  CHECK(im.contains(vec({1, 2})));
  CHECK_FALSE(im.contains(vec({1, 0})));
}

TEST_CASE("rank-nullity and canonical bases on random matrices") {
  std::mt19937_64 rng(7);
  for (Field f : {QQ, Field::prime(7)}) {
    for (int trial = 0; trial < 40; ++trial) {
      size_t r = 1 + trial % 5, c = 1 + (trial * 3) % 6;
      Matrix a = random_matrix(rng, r, c, f);
      Subspace k = kernel(a), im = image(a);
      CHECK(rank(a) == im.dim());
      CHECK(rank(a) + k.dim() == c);
      for (const auto& v : k.basis()) CHECK(is_zero(a * v));
      // Pivots strictly increase.
      for (size_t i = 1; i < k.pivots().size(); ++i) CHECK(k.pivots()[i - 1] < k.pivots()[i]);
      // A shuffled generating set gives the identical canonical basis.
      auto gens = im.basis();
      std::shuffle(gens.begin(), gens.end(), rng);
      if (gens.size() > 1) gens[0] = add(gens[0], gens[1]);
      CHECK(Subspace::span(r, gens, f) == im);
    }
  }
}

TEST_CASE("quotient spaces") {
  QuotientSpace q0 = quotient(3, Subspace(3, QQ));
  CHECK(q0.dim == 3);
  CHECK(q0.projection.is_identity());
  CHECK(quotient(3, Subspace::full(3, QQ)).dim == 0);

  Subspace rel = Subspace::span(2, {vec({1, -1})}, QQ);
  QuotientSpace q = quotient(2, rel);
  CHECK(q.dim == 1);
  CHECK((q.projection * q.section).is_identity());
  CHECK(kernel(q.projection) == rel);
  // The canonical choice sends (a, b) to a + b.
  CHECK(q.project(vec({2, 5})) == vec({7}));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(rng, 3, 6, QQ);
    QuotientSpace qq = quotient(6, image(a.transpose()));
    CHECK((qq.projection * qq.section).is_identity());
    CHECK(kernel(qq.projection) == qq.relations);
    CHECK(qq.dim + qq.relations.dim() == 6);
  }
}

TEST_CASE("product_span") {
  Matrix i2 = Matrix::identity(2, QQ);
  CHECK(product_span({i2}, {i2}) == Subspace::span(4, {i2.flatten()}, QQ));
  Matrix e11 = elementary(2, 0, 0), e12 = elementary(2, 0, 1), e21 = elementary(2, 1, 0), e22 = elementary(2, 1, 1);
  CHECK(product_span({e11}, {e11, e22}) == Subspace::span(4, {e11.flatten()}, QQ));
  Subspace s = product_span({e12, e21}, {e12, e21});
  CHECK(s == Subspace::span(4, {e11.flatten(), e22.flatten()}, QQ));
  CHECK(s.contains(i2.flatten()));
  CHECK_THROWS_AS(product_span({Matrix(3, 2, QQ)}, {Matrix(2, 2, QQ)}), UsageError);
}

TEST_CASE("product_span does not depend on the chosen bases") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Matrix> u, v;
    for (int i = 0; i < 3; ++i) u.push_back(random_matrix(rng, 3, 2, QQ, 1));
    for (int i = 0; i < 2; ++i) v.push_back(random_matrix(rng, 2, 3, QQ, 1));
    // Invertible triangular change of basis.
    std::vector<Matrix> u2{u[0], u[0] + u[1].scaled(2), u[1] - u[2]};
    std::vector<Matrix> v2{v[0] + v[1], v[1].scaled(Scalar::rational(-1, 3))};
    CHECK(product_span(u, v) == product_span(u2, v2));
  }
}

TEST_CASE("inverse") {
  Matrix a = mat({{2, 1}, {1, 1}});
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK((a * *inv).is_identity());
  CHECK_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
  CHECK(inverse(Matrix(0, 0, QQ)).has_value());
}
