#pragma once

#include "mincrit/errors.hpp"
#include "mincrit/numeric.hpp"

namespace mincrit {

// Fixed-precision p-adic integers Z/p^r. The modulus is thread-local and
// set through ZprScope; every value is reduced to [0, p^r).
class Zpr {
 public:
  struct Modulus {
    unsigned long p = 0;
    unsigned long r = 0;
    Integer pr;  // p^r
  };
  static Modulus& modulus();

  Zpr() : v_(0) {}
  Zpr(long x) : v_(x) { reduce(); }  // NOLINT
  explicit Zpr(const Integer& x) : v_(x) { reduce(); }
  // A p-integral rational.
  explicit Zpr(const Rational& q);

  const Integer& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  // Valuation of the representative, capped at r.
  unsigned long valuation() const;

  Zpr& operator+=(const Zpr& o) {
    v_ += o.v_;
    if (v_ >= modulus().pr) v_ -= modulus().pr;
    return *this;
  }
  Zpr& operator-=(const Zpr& o) {
    v_ -= o.v_;
    if (v_ < 0) v_ += modulus().pr;
    return *this;
  }
  Zpr& operator*=(const Zpr& o) {
    v_ *= o.v_;
    mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), modulus().pr.get_mpz_t());
    return *this;
  }
  friend Zpr operator+(Zpr a, const Zpr& b) { return a += b; }
  friend Zpr operator-(Zpr a, const Zpr& b) { return a -= b; }
  friend Zpr operator*(Zpr a, const Zpr& b) { return a *= b; }
  friend Zpr operator-(const Zpr& a) { return Zpr() - a; }
  friend bool operator==(const Zpr& a, const Zpr& b) { return a.v_ == b.v_; }

  // Exact division of the representative by p^k, reinterpreted modulo the
  // current modulus (callers lower the precision afterwards).
  Zpr shifted_down(unsigned long k) const;

 private:
  void reduce() { mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), modulus().pr.get_mpz_t()); }
  Integer v_;
};

// Sets the thread-local modulus for its lifetime and restores the old one.
class ZprScope {
 public:
  ZprScope(unsigned long p, unsigned long r);
  ~ZprScope();
  ZprScope(const ZprScope&) = delete;
  ZprScope& operator=(const ZprScope&) = delete;

  // Lower the precision in place (r' <= r).
  static void set_precision(unsigned long r);

 private:
  Zpr::Modulus saved_;
};

}  // namespace mincrit
