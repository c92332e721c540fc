#pragma once

// Coefficient and real-number primitives shared by every module.
//
//   Rational  exact rational (GMP), always canonical
//   Real      MPFR float, >= 128-bit mantissa (runtime adjustable)
//   Complex   pair of Reals
//
// Real-valued outputs (log norms, Greens values, heights) are Reals.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace mincrit {

using Rational = mpq_class;
using Integer = mpz_class;
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Mantissa precision used for every Real created afterwards. Values below
// 128 are rejected.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

Real real_from(const Integer& z);
Real real_from(const Rational& q);
Real real_pi();
Real real_log2();

// Decimal rendering with `digits` significant digits (reports use 30).
std::string decimal(const Real& x, int digits = 30);

// Canonical n/d (mpq_class(n, d) alone does not reduce).
inline Rational rat(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// p-adic valuation of a nonzero integer / rational.
long valuation(const Integer& z, unsigned long p);
long valuation(const Rational& q, unsigned long p);

// Prime factors of |z| in ascending order (trial division followed by
// Pollard rho for the large cofactor).
std::vector<unsigned long> prime_factors(const Integer& z);
bool is_probable_prime(unsigned long p);

// Exact n-th root of q if q is a perfect n-th power in Q.
bool exact_root(const Rational& q, unsigned long n, Rational& root);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT: implicit promotion
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  explicit Complex(long v) : re(v), im(0) {}
  explicit Complex(const Rational& q) : re(real_from(q)), im(0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

Real abs(const Complex& z);
Complex conj(const Complex& z);
Complex polar(const Real& radius, const Real& angle);
// Principal branch: exp(log(z) / n).
Complex principal_root(const Complex& z, unsigned long n);
Complex pow(const Complex& z, long e);

// All complex roots of sum c_k x^k (constant term first, leading coefficient
// nonzero) by Durand-Kerner iteration.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

// Best rational approximation of x with denominator at most max_den.
Rational rationalize(const Real& x, const Integer& max_den);

}  // namespace mincrit
