#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mincrit/cyclotomic.hpp"
#include "mincrit/numeric.hpp"

namespace mincrit {

// An absolute value on Q. Weights are always 1 over Q.
struct Place {
  unsigned long p = 0;  // 0 for the archimedean place

  static Place archimedean() { return Place{0}; }
  static Place prime(unsigned long q);

  bool is_archimedean() const { return p == 0; }
  Rational weight() const { return Rational(1); }
  std::string name() const { return p == 0 ? "inf" : std::to_string(p); }
  Real log_p() const;  // log p; zero at infinity

  friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
  // Canonical order: archimedean first, then primes ascending.
  friend bool operator<(const Place& a, const Place& b) { return a.p < b.p; }
};

Place parse_place(const std::string& text);

using Scalar = std::variant<Rational, Cyclotomic, Complex>;

Real log_abs(const Rational& q, const Place& v);
Real log_abs(const Cyclotomic& c, const Place& v);
Real log_abs(const Complex& z, const Place& v);
Real log_abs(const Scalar& s, const Place& v);

// max(0, log|q|_v)
Real log_plus(const Rational& q, const Place& v);

// Primes dividing the numerator or denominator of q.
std::vector<unsigned long> support_primes(const Rational& q);

// The archimedean place followed by the primes in `primes` (deduplicated, sorted).
std::vector<Place> places_from_primes(std::vector<unsigned long> primes);

}  // namespace mincrit
