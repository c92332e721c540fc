#pragma once

#include <random>

#include "mincrit/matrix.hpp"
#include "mincrit/form.hpp"

using namespace mincrit;
using QF = Form<Rational>;

inline RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long range = 4) {
  for (;;) {
    RatMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = rat(static_cast<long>(rng() % static_cast<unsigned long>(2 * range + 1)) - range,
                      static_cast<long>(rng() % 3) + 1);
    if (!is_singular(m)) return m;
  }
}

inline QF random_form(std::mt19937_64& rng, int nvars, unsigned deg, int terms) {
  std::vector<QF::Term> t;
  for (int k = 0; k < terms; ++k) {
    std::vector<unsigned> e(static_cast<std::size_t>(nvars), 0);
    for (unsigned j = 0; j < deg; ++j) e[rng() % static_cast<unsigned>(nvars)]++;
    t.emplace_back(mono_make(e), rat(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 4) + 1));
  }
  QF f(nvars, deg, t);
  return f.is_zero() ? QF::variable(nvars, 0).pow(deg) : f;
}
