#include "doctest.h"
#include "mincrit/cyclotomic.hpp"
#include "mincrit/matrix.hpp"
#include "mincrit/places.hpp"
#include "mincrit/zpr.hpp"

#include <random>

using namespace mincrit;

TEST_CASE("parse and print rationals") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational(" -3 ")) == "-3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
}

TEST_CASE("log_abs examples") {
  auto p2 = Place::prime(2);
  CHECK(abs(log_abs(Rational(1, 2), p2) - log(Real(2))) < 1e-30);
  CHECK(abs(log_abs(Rational(-3), Place::archimedean()) - log(Real(3))) < 1e-30);
  Real s = 0;
  for (auto v : {Place::archimedean(), Place::prime(2), Place::prime(3)}) s += log_abs(Rational(6), v);
  CHECK(abs(s) < 1e-30);
  CHECK_THROWS_AS(log_abs(Rational(0), p2), Error);
  Cyclotomic z = Cyclotomic::root_of_unity(3, 1);
  CHECK_THROWS_AS(log_abs(z, p2), Error);
  CHECK(abs(log_abs(z, Place::archimedean())) < 1e-30);
}

TEST_CASE("product formula on random rationals") {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 100; ++i) {
    Rational q(Integer(static_cast<long>(rng() % 100000) + 1) * (rng() % 2 ? 1 : -1),
               Integer(static_cast<long>(rng() % 100000) + 1));
    q.canonicalize();
    Real s = 0;
    for (const auto& v : places_from_primes(support_primes(q))) s += v.weight().get_d() * log_abs(q, v);
    CHECK(abs(s) < Real(1e-30));
  }
}

TEST_CASE("cyclotomic arithmetic") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(euler_phi(12) == 4);
  Cyclotomic z = Cyclotomic::root_of_unity(5, 1);
  Cyclotomic one(1L);
  Cyclotomic p = one;
  for (int i = 0; i < 5; ++i) p *= z;
  CHECK(p == one);
  Cyclotomic s;
  for (int k = 0; k < 5; ++k) s += Cyclotomic::root_of_unity(5, k);
  CHECK(s.is_zero());
  Cyclotomic a = z * z + Cyclotomic(Rational(3, 2)) * z - Cyclotomic(7L);
  CHECK(a * a.inverse() == one);
  Complex e = a.embed() * a.inverse().embed();
  CHECK(abs(e - Complex(Real(1))) < 1e-30);
  Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
  CHECK_THROWS_AS(w + z, Error);
}

TEST_CASE("matrices") {
  RatMatrix a({{1, 2}, {3, 4}});
  CHECK(determinant(a) == -2);
  CHECK(a * inverse(a) == RatMatrix::identity(2));
  auto adj = adjugate(a);
  RatMatrix d = a * adj;
  CHECK(d == RatMatrix({{-2, 0}, {0, -2}}));
  CHECK_THROWS_AS(inverse(RatMatrix({{1, 2}, {2, 4}})), Error);
  CHECK(minor(a, 0, 1) == 3);
}

TEST_CASE("p-adic fixed precision") {
  ZprScope scope(3, 5);
  Zpr x(Rational(1, 2));
  CHECK((x * Zpr(2L)) == Zpr(1L));
  Zpr y(Integer(18));
  CHECK(y.valuation() == 2);
  CHECK(y.shifted_down(2) == Zpr(2L));
}
