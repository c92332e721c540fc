#include "mincrit/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "mincrit/errors.hpp"

namespace mincrit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnsupportedDomain: return "unsupported-domain";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::IrrationalCriticalLocus: return "irrational-critical-locus";
    case ErrorKind::NotMinimallyCritical: return "not-minimally-critical";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

unsigned g_precision_bits = 0;

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

struct PrecisionInit {
  PrecisionInit() { set_precision_bits(128); }
} g_precision_init;

}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < 128) fail(ErrorKind::Precondition, "precision must be >= 128 bits");
  g_precision_bits = bits;
  Real::default_precision(digits_for_bits(bits));
}

unsigned precision_bits() { return g_precision_bits; }

Real real_from(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real real_from(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real real_log2() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string decimal(const Real& x, int digits) {
  if (x == 0) return "0";
  // scientific counts digits after the point
  return x.str(digits - 1, std::ios_base::scientific);
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorKind::Parse, "empty rational");
  if (s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-')
    fail(ErrorKind::Parse, "malformed rational '" + text + "'");
  Integer n{num}, m{den};
  if (m == 0) fail(ErrorKind::Parse, "zero denominator in '" + text + "'");
  Rational q{n, m};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long valuation(const Integer& z, unsigned long p) {
  if (z == 0) fail(ErrorKind::Domain, "valuation of zero");
  Integer rest;
  Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& q, unsigned long p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

bool is_probable_prime(unsigned long p) {
  Integer z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          Integer diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        Integer diff = x - ys;
        Integer ad = abs(diff);
        mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  Integer f = pollard_brent(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

std::vector<unsigned long> prime_factors(const Integer& z) {
  Integer n = abs(z);
  std::vector<unsigned long> primes;
  if (n == 0) fail(ErrorKind::Domain, "prime factors of zero");
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.push_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  std::vector<Integer> big;
  factor_into(n, big);
  for (const auto& f : big) {
    if (!f.fits_ulong_p()) fail(ErrorKind::Budget, "prime factor exceeds 64 bits");
    primes.push_back(f.get_ui());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

bool exact_root(const Rational& q, unsigned long n, Rational& root) {
  if (n == 0) return false;
  if (q == 0) {
    root = 0;
    return true;
  }
  if (q < 0 && n % 2 == 0) return false;
  Integer num = abs(q.get_num()), den = q.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return false;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return false;
  root = Rational(q < 0 ? Integer(-rn) : rn, rd);
  root.canonicalize();
  return true;
}

Complex& Complex::operator/=(const Complex& o) {
  Real den = o.re * o.re + o.im * o.im;
  if (den == 0) fail(ErrorKind::Domain, "complex division by zero");
  Real r = (re * o.re + im * o.im) / den;
  im = (im * o.re - re * o.im) / den;
  re = std::move(r);
  return *this;
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex polar(const Real& radius, const Real& angle) {
  return Complex(radius * cos(angle), radius * sin(angle));
}

Complex principal_root(const Complex& z, unsigned long n) {
  Real r = abs(z);
  if (r == 0) return Complex();
  Real arg = atan2(z.im, z.re);
  return polar(exp(log(r) / n), arg / n);
}

Complex pow(const Complex& z, long e) {
  if (e < 0) return Complex(Real(1)) / pow(z, -e);
  Complex result(Real(1)), base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::size_t n = coeffs.size() - 1;
  if (coeffs.empty() || abs(coeffs.back()) == 0) fail(ErrorKind::Domain, "leading coefficient is zero");
  if (n == 0) return {};
  std::vector<Complex> monic(coeffs.size());
  for (std::size_t k = 0; k <= n; ++k) monic[k] = coeffs[k] / coeffs.back();
  auto eval = [&](const Complex& x) {
    Complex acc = monic[n];
    for (std::size_t k = n; k-- > 0;) acc = acc * x + monic[k];
    return acc;
  };
  Real radius = 1;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, Real(1) + abs(monic[k]));
  std::vector<Complex> z(n);
  Complex seed(Real(4) / 10, Real(9) / 10);
  for (std::size_t k = 0; k < n; ++k) z[k] = pow(seed, static_cast<long>(k)) * Complex(radius / 2);
  Real tol = pow(Real(2), -static_cast<int>(precision_bits()) + 16);
  for (int iter = 0; iter < 2000; ++iter) {
    Real change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex den(Real(1));
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (abs(den) == 0) den = Complex(tol);
      Complex step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, abs(step));
    }
    if (change < tol * radius) break;
  }
  return z;
}

Rational rationalize(const Real& x, const Integer& max_den) {
  // Continued fraction convergents.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real r = x;
  for (int i = 0; i < 200; ++i) {
    Real fl = floor(r);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Real frac = r - fl;
    if (frac < pow(Real(2), -static_cast<int>(precision_bits()) / 2)) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace mincrit
