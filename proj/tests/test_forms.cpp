#include "doctest.h"
#include "mincrit/substitution.hpp"

#include <random>

using namespace mincrit;
using QF = Form<Rational>;

namespace {

QF random_form(std::mt19937_64& rng, int nvars, unsigned deg, int terms) {
  std::vector<QF::Term> t;
  for (int k = 0; k < terms; ++k) {
    std::vector<unsigned> e(static_cast<std::size_t>(nvars), 0);
    for (unsigned j = 0; j < deg; ++j) e[rng() % static_cast<unsigned>(nvars)]++;
    t.emplace_back(mono_make(e), Rational(static_cast<long>(rng() % 11) - 5));
  }
  return QF(nvars, deg, t);
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    RatMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rat(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
    if (!is_singular(m)) return m;
  }
}

}  // namespace

TEST_CASE("form arithmetic") {
  QF x0 = QF::variable(2, 0), x1 = QF::variable(2, 1);
  CHECK((x0 - x1) * (x0 + x1) == x0 * x0 - x1 * x1);
  std::mt19937_64 rng(1);
  QF a = random_form(rng, 3, 4, 6), b = random_form(rng, 3, 4, 6);
  CHECK((a + b) - b == a);
  CHECK(normalize_projective(a.scaled(Rational(7, 3))) == normalize_projective(a));
  QF f = (x0.scaled(4) - x1.scaled(2));
  CHECK(normalize_projective(f).terms().front().second == 1);
}

TEST_CASE("linear substitution matches direct expansion") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    QF f = random_form(rng, n, 1 + trial % 4, 5);
    RatMatrix c = random_matrix(rng, static_cast<std::size_t>(n));
    QF fast = apply_plan(f, plan_substitution(c));
    CHECK(fast == substitute_direct(f, c));
    QF back = apply_plan(fast, plan_substitution(inverse(c)));
    CHECK(back == f);
  }
}

TEST_CASE("power pushforward against brute force products") {
  QF x0 = QF::variable(2, 0), x1 = QF::variable(2, 1);
  CHECK(normalize_projective(power_pushforward(x0, 2)) == x0 * x0);
  QF l = x0 - x1;
  CHECK(power_pushforward(l, 2) == l * l);
  // V(X0 - c X1) pushes to (X0 - c^d X1)^{d^N}
  QF m = x0 - x1.scaled(3);
  QF target = x0 - x1.scaled(27);
  CHECK(normalize_projective(power_pushforward(m, 3)) == normalize_projective(target.pow(3)));
  QF m5 = x0 - x1.scaled(2);
  CHECK(normalize_projective(power_pushforward(m5, 5)) == normalize_projective((x0 - x1.scaled(32)).pow(5)));
  CHECK(power_pushforward(m5, 6).degree() == 6);
  CHECK(power_pushforward(QF::variable(3, 1) + QF::variable(3, 2), 4).degree() == 16);
}

#include "mincrit/poly_gcd.hpp"

TEST_CASE("squarefree part examples") {
  QF x0 = QF::variable(2, 0), x1 = QF::variable(2, 1);
  CHECK(squarefree_part((x0 - x1).pow(2)) == normalize_projective(x0 - x1));
  CHECK(squarefree_part(x0.pow(3) * x1) == x0 * x1);
  QF a = (x0 * x0 - x1 * x1) * (x0 - x1);
  CHECK(squarefree_part(a) == normalize_projective(x0 * x0 - x1 * x1));
}

TEST_CASE("squarefree part is stable under powers") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 3;
    QF prod = QF::constant(n, 1);
    int nf = 1 + trial % 3;
    for (int k = 0; k < nf; ++k) {
      QF l(n, 1);
      for (int i = 0; i < n; ++i) l += QF::variable(n, i).scaled(Rational(static_cast<long>(rng() % 7) - 3));
      if (l.is_zero()) l = QF::variable(n, 0);
      prod = prod * l;
    }
    QF base = squarefree_part(prod);
    for (unsigned e = 1; e <= 4; ++e) CHECK(squarefree_part(prod.pow(e)) == base);
  }
}

TEST_CASE("squarefree part over a cyclotomic field") {
  using CF = Form<Cyclotomic>;
  CF x0 = CF::variable(3, 0), x1 = CF::variable(3, 1), x2 = CF::variable(3, 2);
  Cyclotomic z = Cyclotomic::root_of_unity(3, 1);
  CF l = x0 + x1.scaled(z) - x2.scaled(z * z);
  CF q = x0 * x1 - x2 * x2.scaled(z);
  CF f = l.pow(3) * q.pow(2);
  CHECK(squarefree_part(f) == normalize_projective(l * q));
}
