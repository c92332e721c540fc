#pragma once

#include <vector>

#include "mincrit/numeric.hpp"

namespace mincrit {

// Element of Q(zeta_n), stored densely as a rational vector of length phi(n)
// reduced modulo the n-th cyclotomic polynomial. Conductor 1 is Q itself and
// promotes silently into any other conductor; other mismatches throw.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{Rational(0)} {}
  Cyclotomic(long v) : n_(1), c_{Rational(v)} {}  // NOLINT
  Cyclotomic(const Rational& q) : n_(1), c_{q} {}  // NOLINT
  Cyclotomic(unsigned long conductor, std::vector<Rational> coeffs);

  // zeta_n^k
  static Cyclotomic root_of_unity(unsigned long conductor, long k);

  unsigned long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  Cyclotomic inverse() const;
  // Value under the principal embedding zeta_n -> exp(2 pi i / n).
  Complex embed() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend Cyclotomic operator-(Cyclotomic a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  void promote_to(unsigned long n);
  void reduce();

  unsigned long n_;
  std::vector<Rational> c_;
};

unsigned long euler_phi(unsigned long n);
// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(unsigned long n);

}  // namespace mincrit
