#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "holcat/matrix.hpp"

using namespace holcat;

namespace {

std::mt19937_64 rng(77);

Matrix random_matrix(std::size_t r, std::size_t c) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rref basics") {
  CHECK(rref(Matrix::identity(4)) == Matrix::identity(4));
  Matrix m(2, 2, {Scalar(2), Scalar(4), Scalar(1), Scalar(2)});
  Matrix expect(2, 2, {Scalar(1), Scalar(2), Scalar(0), Scalar(0)});
  CHECK(rref(m) == expect);
  for (int t = 0; t < 10; ++t) {
    Matrix r = random_matrix(5, 5);
    CHECK(rref(rref(r)) == rref(r));
  }
}

TEST_CASE("nullspace") {
  Subspace z = nullspace(Matrix(3, 3));
  CHECK(z.dim() == 3);
  CHECK(z == Subspace::full(3));
  CHECK(nullspace(Matrix::identity(4)).dim() == 0);
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_matrix(4, 6);
    Subspace ns = nullspace(m);
    CHECK(ns.dim() + rank(m) == 6);
    for (const auto& v : ns.basis()) {
      Vector mv = m.apply(v);
      for (const auto& x : mv) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("span and containment") {
  CHECK(Subspace::span(4, {}).dim() == 0);
  Vector v{Scalar(1), Scalar(2), Scalar(0), Scalar(-1)};
  Vector v2{Scalar(2), Scalar(4), Scalar(0), Scalar(-2)};
  Subspace s = Subspace::span(4, {v, v2});
  CHECK(s.dim() == 1);
  CHECK(s.contains(v));

  Subspace full = Subspace::full(3);
  CHECK(full.contains(Vector{Scalar(5), Scalar(-1), Scalar(7)}));
  Subspace zero(3);
  CHECK_FALSE(zero.contains(Vector{Scalar(1), Scalar(0), Scalar(0)}));

  Vector a{Scalar(1), Scalar(0), Scalar(1)}, b{Scalar(0), Scalar(1), Scalar(1)};
  Subspace sp = Subspace::span(3, {a, b});
  Vector combo(3);
  for (int i = 0; i < 3; ++i) combo[i] = a[i] + Scalar(3) * b[i];
  CHECK(sp.contains(combo));

  // span is idempotent on its own basis
  CHECK(Subspace::span(3, sp.basis()) == sp);
}

TEST_CASE("subspace equality agrees with mutual containment") {
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_matrix(3, 5);
    std::vector<Vector> rows, scrambled;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    Subspace s1 = Subspace::span(5, rows);
    // same span, different generating set
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Vector w(5, Scalar(0));
      for (std::size_t j = 0; j < rows.size(); ++j) {
        Scalar c = (i == j) ? Scalar(2) : Scalar(1);
        for (std::size_t k = 0; k < 5; ++k) w[k] += c * rows[j][k];
      }
      scrambled.push_back(w);
    }
    Subspace s2 = Subspace::span(5, scrambled);
    bool mutual = s1.contains(s2) && s2.contains(s1);
    CHECK(mutual == (s1 == s2));
  }
}

TEST_CASE("solve") {
  Vector b{Scalar(3), Scalar(-2), Scalar(5)};
  auto x = solve(Matrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  Matrix m(1, 2, {Scalar(1), Scalar(1)});
  auto y = solve(m, Vector{Scalar(2)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] + (*y)[1] == Scalar(2));

  Matrix inc(2, 1, {Scalar(1), Scalar(1)});
  CHECK_FALSE(solve(inc, Vector{Scalar(0), Scalar(1)}).has_value());
}

TEST_CASE("inverse and determinant") {
  for (int t = 0; t < 6; ++t) {
    Matrix m = random_matrix(4, 4);
    Scalar det = determinant(m);
    if (det.is_zero()) continue;
    Matrix inv = inverse(m);
    CHECK(m * inv == Matrix::identity(4));
    CHECK(inv * m == Matrix::identity(4));
  }
  Matrix sing(2, 2, {Scalar(1), Scalar(2), Scalar(2), Scalar(4)});
  CHECK(determinant(sing).is_zero());
  CHECK_THROWS(inverse(sing));
}

TEST_CASE("subspace sum and intersection") {
  Vector e1{Scalar(1), Scalar(0), Scalar(0)};
  Vector e2{Scalar(0), Scalar(1), Scalar(0)};
  Vector e3{Scalar(0), Scalar(0), Scalar(1)};
  Subspace a = Subspace::span(3, {e1, e2});
  Subspace b = Subspace::span(3, {e2, e3});
  CHECK(a.sum(b) == Subspace::full(3));
  Subspace inter = a.intersect(b);
  CHECK(inter.dim() == 1);
  CHECK(inter.contains(e2));
}
