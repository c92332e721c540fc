#include "mincrit/norms.hpp"

namespace mincrit {

long form_norm_exponent(const Form<Rational>& f, unsigned long p) {
  if (f.is_zero()) fail(ErrorKind::Domain, "norm of the zero form");
  long best = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    long v = -valuation(t.second, p);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

long matrix_norm_exponent(const RatMatrix& a, unsigned long p) {
  long best = 0;
  bool first = true;
  for (const auto& x : a.data()) {
    if (x == 0) continue;
    long v = -valuation(x, p);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

std::vector<Place> bad_places(const RatMatrix& a, unsigned d, int N) {
  Rational det = determinant(a);
  if (det == 0) fail(ErrorKind::Domain, "matrix is singular");
  Integer m = 2 * Integer(d);
  for (int k = 2; k <= N + 1; ++k) m *= k;
  m *= abs(det.get_num()) * det.get_den();
  for (const auto& x : a.data()) m *= x.get_den();
  return places_from_primes(prime_factors(m));
}

}  // namespace mincrit
