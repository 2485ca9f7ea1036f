#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "holcat/polynomial.hpp"
#include "holcat/rational.hpp"

using namespace holcat;

namespace {

std::mt19937_64 rng(20260810);

Rational random_rational() {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 7);
  return Rational(num(rng), den(rng));
}

Polynomial random_poly(std::size_t nvars, unsigned max_deg = 4, int nterms = 6) {
  Polynomial p(nvars);
  std::uniform_int_distribution<unsigned> e(0, max_deg);
  for (int t = 0; t < nterms; ++t) {
    Monomial m(nvars, 0);
    unsigned budget = max_deg;
    for (std::size_t i = 0; i < nvars; ++i) {
      unsigned v = e(rng) % (budget + 1);
      m[i] = v;
      budget -= v;
    }
    p.add_term(m, Scalar(random_rational()));
  }
  return p;
}

}  // namespace

TEST_CASE("Rational canonical form") {
  Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(0).denominator() == 1);
  CHECK(Rational::from_string("10/15") == Rational(2, 3));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
  CHECK_THROWS(Rational(1, 2) / Rational(0));
}

TEST_CASE("Scalar field Q(sqrt 3)") {
  Scalar s = Scalar::sqrt3();
  CHECK(s * s == Scalar(3));
  Scalar x(Rational(1, 2), Rational(-2, 3));
  Scalar y = Scalar(1) / x;
  CHECK(x * y == Scalar(1));
  CHECK((x + (-x)).is_zero());
  CHECK(Scalar::from_string("1/2+-2/3*rt3") == x);
  CHECK(Scalar::from_string(x.str()) == x);
  CHECK(Scalar::from_string("-5/7") == Scalar(-5, 7));
  CHECK(Scalar::from_string("2*rt3") == Scalar(Rational(0), Rational(2)));
  CHECK_FALSE(x.is_rational());
  CHECK_THROWS(x.to_rational());
}

TEST_CASE("polynomial add") {
  Polynomial x1 = Polynomial::variable(2, 0);
  Polynomial one = Polynomial::constant(2, Scalar(1));
  CHECK((x1 + one) + (-x1) == one);
  Polynomial p = random_poly(2);
  CHECK(p + Polynomial(2) == p);
  Polynomial x1sq = x1 * x1;
  CHECK(x1sq + Scalar(2) * x1sq == Scalar(3) * x1sq);
  Polynomial wrong(3);
  CHECK_THROWS(p + wrong);
}

TEST_CASE("polynomial mul") {
  Polynomial x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1);
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
  Polynomial p = random_poly(2);
  CHECK(p * Polynomial::constant(2, Scalar(1)) == p);
  Polynomial half_x1 = Scalar(1, 2) * x1, two_thirds_x2 = Scalar(2, 3) * x2;
  CHECK(half_x1 * two_thirds_x2 == Scalar(1, 3) * (x1 * x2));
}

TEST_CASE("polynomial partial derivative") {
  Polynomial x4 = Polynomial::variable(4, 3);
  CHECK((x4 * x4).partial(3) == Scalar(2) * x4);
  CHECK(Polynomial::constant(4, Scalar(9)).partial(0).is_zero());
  CHECK_THROWS(x4.partial(4));
  // commutativity of mixed partials, brute-checked on random inputs
  for (int i = 0; i < 20; ++i) {
    Polynomial p = random_poly(3);
    CHECK(p.partial(0).partial(1) == p.partial(1).partial(0));
  }
  Polynomial x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1);
  Polynomial q = x1 * x2 * x2;
  CHECK(q.partial(0).partial(1) == Scalar(2) * x2);
}

TEST_CASE("polynomial evaluate") {
  Polynomial x4 = Polynomial::variable(4, 3);
  std::vector<Scalar> zero(4, Scalar(0));
  CHECK((x4 * x4).evaluate(zero).is_zero());
  Polynomial x1 = Polynomial::variable(4, 0), x2 = Polynomial::variable(4, 1);
  std::vector<Scalar> pt{Scalar(1, 2), Scalar(1, 3), Scalar(0), Scalar(0)};
  CHECK((x1 + x2).evaluate(pt) == Scalar(5, 6));
  CHECK_THROWS(x1.evaluate(std::vector<Scalar>(3, Scalar(0))));

  // independent evaluation strategy: substitute one variable at a time
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial p = random_poly(3);
    std::vector<Scalar> point{Scalar(random_rational()), Scalar(random_rational()),
                              Scalar(random_rational())};
    Scalar direct = p.evaluate(point);
    Scalar term_sum(0);
    for (const auto& [m, c] : p.terms()) {
      Scalar t = c;
      for (std::size_t i = 0; i < 3; ++i) {
        Scalar pw(1);
        for (std::uint32_t e = 0; e < m[i]; ++e) pw *= point[i];
        t *= pw;
      }
      term_sum += t;
    }
    CHECK(direct == term_sum);
  }
}

TEST_CASE("polynomial ring properties") {
  for (int trial = 0; trial < 15; ++trial) {
    Polynomial p = random_poly(3), q = random_poly(3), r = random_poly(3);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    // product rule
    CHECK((p * q).partial(1) == p.partial(1) * q + p * q.partial(1));
    // evaluation is a ring homomorphism
    std::vector<Scalar> point{Scalar(random_rational()), Scalar(random_rational()),
                              Scalar(random_rational())};
    CHECK((p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point));
    CHECK((p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point));
  }
}

TEST_CASE("graded-lex canonical order") {
  Polynomial p(2);
  p.add_term({2, 0}, Scalar(1));
  p.add_term({0, 1}, Scalar(1));
  p.add_term({1, 1}, Scalar(1));
  std::vector<Monomial> order;
  for (const auto& [m, c] : p.terms()) order.push_back(m);
  REQUIRE(order.size() == 3);
  CHECK(order[0] == Monomial{0, 1});
  CHECK(order[1] == Monomial{1, 1});
  CHECK(order[2] == Monomial{2, 0});
}

TEST_CASE("polynomial shift") {
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial p = x * x;
  Polynomial sh = p.shifted({Scalar(3)});
  // (x+3)^2 = x^2 + 6x + 9
  Polynomial expect = x * x + Scalar(6) * x + Polynomial::constant(1, Scalar(9));
  CHECK(sh == expect);
  CHECK(sh.value_at_zero() == Scalar(9));
}
