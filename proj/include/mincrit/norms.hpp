#pragma once

#include "mincrit/form.hpp"
#include "mincrit/matrix.hpp"
#include "mincrit/places.hpp"

namespace mincrit {

// log max |coefficient|_v
template <class K>
Real form_norm(const Form<K>& f, const Place& v) {
  if (f.is_zero()) fail(ErrorKind::Domain, "norm of the zero form");
  Real best = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    Real x = log_abs(t.second, v);
    if (first || x > best) best = x;
    first = false;
  }
  return best;
}

// Exponent e with form_norm = e log p at a finite place (minus the minimal valuation).
long form_norm_exponent(const Form<Rational>& f, unsigned long p);

// log max |entry|_v over nonzero entries.
template <class K>
Real matrix_norm(const Matrix<K>& a, const Place& v) {
  Real best = 0;
  bool first = true;
  for (const auto& x : a.data()) {
    if (Ring<K>::is_zero(x)) continue;
    Real y = log_abs(x, v);
    if (first || y > best) best = y;
    first = false;
  }
  if (first) fail(ErrorKind::Domain, "norm of the zero matrix");
  return best;
}

long matrix_norm_exponent(const RatMatrix& a, unsigned long p);

// Archimedean place followed by every prime dividing 2 d (N+1)!, the
// numerator and denominator of det A, and any entry denominator.
std::vector<Place> bad_places(const RatMatrix& a, unsigned d, int N);

}  // namespace mincrit
