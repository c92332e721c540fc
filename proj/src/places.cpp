#include "mincrit/places.hpp"

#include <algorithm>

#include "mincrit/errors.hpp"

namespace mincrit {

Place Place::prime(unsigned long q) {
  if (q < 2 || !is_probable_prime(q)) fail(ErrorKind::Domain, "not a prime: " + std::to_string(q));
  return Place{q};
}

Real Place::log_p() const {
  if (p == 0) return Real(0);
  return log(Real(p));
}

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "arch" || text == "infinity") return Place::archimedean();
  try {
    std::size_t used = 0;
    unsigned long q = std::stoul(text, &used);
    if (used != text.size()) fail(ErrorKind::Parse, "bad place '" + text + "'");
    return Place::prime(q);
  } catch (const std::logic_error&) {
    fail(ErrorKind::Parse, "bad place '" + text + "'");
  }
}

Real log_abs(const Rational& q, const Place& v) {
  if (q == 0) fail(ErrorKind::Domain, "log_abs of zero");
  if (v.is_archimedean()) return log(abs(real_from(q)));
  return -Real(valuation(q, v.p)) * v.log_p();
}

Real log_abs(const Cyclotomic& c, const Place& v) {
  if (c.is_zero()) fail(ErrorKind::Domain, "log_abs of zero");
  if (c.is_rational()) return log_abs(c.rational_value(), v);
  if (!v.is_archimedean())
    fail(ErrorKind::UnsupportedDomain, "cyclotomic scalar at a finite place");
  return log(abs(c.embed()));
}

Real log_abs(const Complex& z, const Place& v) {
  if (!v.is_archimedean())
    fail(ErrorKind::UnsupportedDomain, "complex scalar at a finite place");
  Real r = abs(z);
  if (r == 0) fail(ErrorKind::Domain, "log_abs of zero");
  return log(r);
}

Real log_abs(const Scalar& s, const Place& v) {
  return std::visit([&](const auto& x) { return log_abs(x, v); }, s);
}

Real log_plus(const Rational& q, const Place& v) {
  if (q == 0) return Real(0);
  Real r = log_abs(q, v);
  return r > 0 ? r : Real(0);
}

std::vector<unsigned long> support_primes(const Rational& q) {
  if (q == 0) return {};
  auto a = prime_factors(q.get_num());
  auto b = prime_factors(q.get_den());
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Place> places_from_primes(std::vector<unsigned long> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out{Place::archimedean()};
  for (auto p : primes) out.push_back(Place{p});
  return out;
}

}  // namespace mincrit
