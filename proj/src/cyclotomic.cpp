#include "mincrit/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "mincrit/errors.hpp"

namespace mincrit {

namespace {

using QPoly = std::vector<Rational>;  // constant term first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero).
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  r = std::move(a);
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n, m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact quotient of integer polynomials (divisor monic).
std::vector<long> divide_monic(std::vector<long> a, const std::vector<long>& b) {
  std::vector<long> q(a.size() - b.size() + 1, 0);
  for (std::size_t s = q.size(); s-- > 0;) {
    long c = a[s + b.size() - 1];
    q[s] = c;
    for (std::size_t t = 0; t < b.size(); ++t) a[s + t] -= c * b[t];
  }
  return q;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, std::vector<long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // Fill every divisor in increasing order: Phi_k = (x^k - 1) / prod_{j | k, j < k} Phi_j.
  for (unsigned long k = 1; k <= n; ++k) {
    if (n % k != 0 || cache.count(k)) continue;
    std::vector<long> p(k + 1, 0);
    p[0] = -1;
    p[k] = 1;
    for (unsigned long j = 1; j < k; ++j)
      if (k % j == 0) p = divide_monic(p, cache.at(j));
    cache[k] = p;
  }
  return cache.at(n);
}

Cyclotomic::Cyclotomic(unsigned long conductor, std::vector<Rational> coeffs)
    : n_(conductor), c_(std::move(coeffs)) {
  if (n_ == 0) fail(ErrorKind::Domain, "cyclotomic conductor must be >= 1");
  reduce();
}

Cyclotomic Cyclotomic::root_of_unity(unsigned long conductor, long k) {
  long e = k % static_cast<long>(conductor);
  if (e < 0) e += static_cast<long>(conductor);
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c[static_cast<std::size_t>(e)] = 1;
  return Cyclotomic(conductor, std::move(c));
}

void Cyclotomic::reduce() {
  const auto& phi = cyclotomic_polynomial(n_);
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = c_.size(); i-- > deg;) {
    if (c_[i] == 0) continue;
    Rational f = c_[i];
    for (std::size_t t = 0; t <= deg; ++t) c_[i - deg + t] -= f * phi[t];
  }
  c_.resize(deg, Rational(0));
}

void Cyclotomic::promote_to(unsigned long n) {
  if (n_ == n) return;
  if (n_ != 1) fail(ErrorKind::UnsupportedDomain, "mixed cyclotomic conductors");
  Rational q = c_[0];
  n_ = n;
  c_.assign(euler_phi(n), Rational(0));
  c_[0] = q;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) fail(ErrorKind::UnsupportedDomain, "cyclotomic value is not rational");
  return c_[0];
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.n_ != n_) {
    if (n_ == 1) {
      promote_to(o.n_);
    } else {
      Cyclotomic t = o;
      t.promote_to(n_);
      return *this += t;
    }
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator-(Cyclotomic a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.n_ == 1) {
    for (auto& c : c_) c *= o.c_[0];
    return *this;
  }
  if (n_ == 1) {
    Rational q = c_[0];
    *this = o;
    for (auto& c : c_) c *= q;
    return *this;
  }
  if (o.n_ != n_) fail(ErrorKind::UnsupportedDomain, "mixed cyclotomic conductors");
  c_ = mul(c_, o.c_);
  if (c_.empty()) c_.push_back(Rational(0));
  reduce();
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  return false;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail(ErrorKind::Domain, "inverse of zero");
  if (n_ == 1) return Cyclotomic(Rational(1) / c_[0]);
  // Extended Euclid: s*a + t*phi = 1.
  const auto& phi_int = cyclotomic_polynomial(n_);
  QPoly phi(phi_int.begin(), phi_int.end());
  QPoly a = c_;
  trim(a);
  QPoly r0 = phi, r1 = a, s0{}, s1{Rational(1)};
  while (!r1.empty() && !(r1.size() == 1)) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) fail(ErrorKind::Domain, "non-invertible cyclotomic element");
  for (auto& c : s1) c /= r1[0];
  return Cyclotomic(n_, s1);
}

Complex Cyclotomic::embed() const {
  Complex sum;
  Real angle = 2 * real_pi() / n_;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) sum += Complex(real_from(c_[k])) * polar(Real(1), angle * static_cast<long>(k));
  return sum;
}

}  // namespace mincrit
