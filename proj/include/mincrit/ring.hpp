#pragma once

// Uniform access to the coefficient rings used by forms and matrices.

#include "mincrit/cyclotomic.hpp"
#include "mincrit/numeric.hpp"
#include "mincrit/zpr.hpp"

namespace mincrit {

template <class K>
struct Ring;

template <>
struct Ring<Rational> {
  static constexpr bool exact = true;
  static constexpr bool field = true;
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inv(const Rational& x) { return 1 / x; }
  static Rational from_rational(const Rational& q) { return q; }
  static bool better_pivot(const Rational& a, const Rational& b) { return abs(a) > abs(b); }
};

template <>
struct Ring<Integer> {
  static constexpr bool exact = true;
  static constexpr bool field = false;
  static Integer zero() { return 0; }
  static Integer one() { return 1; }
  static bool is_zero(const Integer& x) { return x == 0; }
};

template <>
struct Ring<Cyclotomic> {
  static constexpr bool exact = true;
  static constexpr bool field = true;
  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(1L); }
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  static Cyclotomic inv(const Cyclotomic& x) { return x.inverse(); }
  static Cyclotomic from_rational(const Rational& q) { return Cyclotomic(q); }
  static bool better_pivot(const Cyclotomic& a, const Cyclotomic& b) {
    return b.is_zero() && !a.is_zero();
  }
};

template <>
struct Ring<Real> {
  static constexpr bool exact = false;
  static constexpr bool field = true;
  static Real zero() { return Real(0); }
  static Real one() { return Real(1); }
  static bool is_zero(const Real& x) { return x == 0; }
  static Real inv(const Real& x) { return 1 / x; }
  static Real from_rational(const Rational& q) { return real_from(q); }
  static bool better_pivot(const Real& a, const Real& b) { return abs(a) > abs(b); }
};

template <>
struct Ring<Complex> {
  static constexpr bool exact = false;
  static constexpr bool field = true;
  static Complex zero() { return Complex(); }
  static Complex one() { return Complex(Real(1)); }
  static bool is_zero(const Complex& x) { return x.re == 0 && x.im == 0; }
  static Complex inv(const Complex& x) { return Complex(Real(1)) / x; }
  static Complex from_rational(const Rational& q) { return Complex(q); }
  static bool better_pivot(const Complex& a, const Complex& b) { return abs(a) > abs(b); }
};

template <>
struct Ring<Zpr> {
  static constexpr bool exact = true;
  static constexpr bool field = false;
  static Zpr zero() { return Zpr(); }
  static Zpr one() { return Zpr(1L); }
  static bool is_zero(const Zpr& x) { return x.is_zero(); }
  static Zpr from_rational(const Rational& q) { return Zpr(q); }
};

// Conversion between coefficient domains (only the meaningful ones).
template <class To, class From>
To convert(const From& x);

template <>
inline Rational convert<Rational, Rational>(const Rational& x) { return x; }
template <>
inline Cyclotomic convert<Cyclotomic, Rational>(const Rational& x) { return Cyclotomic(x); }
template <>
inline Cyclotomic convert<Cyclotomic, Cyclotomic>(const Cyclotomic& x) { return x; }
template <>
inline Real convert<Real, Rational>(const Rational& x) { return real_from(x); }
template <>
inline Real convert<Real, Real>(const Real& x) { return x; }
template <>
inline Complex convert<Complex, Rational>(const Rational& x) { return Complex(x); }
template <>
inline Complex convert<Complex, Cyclotomic>(const Cyclotomic& x) { return x.embed(); }
template <>
inline Complex convert<Complex, Real>(const Real& x) { return Complex(x); }
template <>
inline Complex convert<Complex, Complex>(const Complex& x) { return x; }
template <>
inline Zpr convert<Zpr, Rational>(const Rational& x) { return Zpr(x); }

}  // namespace mincrit
