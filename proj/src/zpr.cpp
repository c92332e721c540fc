#include "mincrit/zpr.hpp"

namespace mincrit {

Zpr::Modulus& Zpr::modulus() {
  thread_local Modulus m;
  return m;
}

Zpr::Zpr(const Rational& q) {
  const auto& m = modulus();
  Integer den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), m.p))
    fail(ErrorKind::Domain, "rational is not p-integral");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.pr.get_mpz_t());
  v_ = q.get_num() * inv;
  reduce();
}

unsigned long Zpr::valuation() const {
  const auto& m = modulus();
  if (v_ == 0) return m.r;
  Integer rest;
  Integer prime(m.p);
  return mpz_remove(rest.get_mpz_t(), v_.get_mpz_t(), prime.get_mpz_t());
}

Zpr Zpr::shifted_down(unsigned long k) const {
  Zpr out;
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), modulus().p, k);
  out.v_ = v_ / pk;
  out.reduce();
  return out;
}

ZprScope::ZprScope(unsigned long p, unsigned long r) : saved_(Zpr::modulus()) {
  auto& m = Zpr::modulus();
  m.p = p;
  m.r = r;
  mpz_ui_pow_ui(m.pr.get_mpz_t(), p, r);
}

ZprScope::~ZprScope() { Zpr::modulus() = saved_; }

void ZprScope::set_precision(unsigned long r) {
  auto& m = Zpr::modulus();
  m.r = r;
  mpz_ui_pow_ui(m.pr.get_mpz_t(), m.p, r);
}

}  // namespace mincrit
