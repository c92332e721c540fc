#include "mincrit/greens.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace mincrit {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <class K>
StepConstants constants_for(const Matrix<K>& a, const Place& v) {
  const int N = static_cast<int>(a.size()) - 1;
  Real norm = matrix_norm(a, v);
  Real det = log_abs(determinant(a), v);
  StepConstants c;
  c.b = log_plus(Rational(2), v);
  c.a_lo = norm + c.b;
  c.a_hi = N * norm - det + log_plus(2 * factorial(N), v);
  return c;
}

Real rpow(unsigned base, long e) { return pow(Real(base), e); }

unsigned long upow(unsigned long base, unsigned e) {
  unsigned long r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// Working precision is raised by setting the MPFR default; values created
// afterwards (including arithmetic results) use it.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }

 private:
  unsigned saved_;
};

Real fresh(const Real& x) {
  Real y(0);
  y += x;
  return y;
}
Complex fresh(const Complex& z) { return Complex(fresh(z.re), fresh(z.im)); }

Real magnitude(const Real& x) { return boost::multiprecision::abs(x); }
Real magnitude(const Complex& z) { return abs(z); }

double to_double(const Real& x) { return x.convert_to<double>(); }

template <class Kf, class K0>
double plan_cost(const SubstPlan<K0>& plan) {
  double s = 0;
  for (const auto& op : plan) {
    if (op.kind == SubstOp<K0>::Permute) continue;
    double t = to_double(magnitude(convert<Kf, K0>(op.t)));
    if (op.kind == SubstOp<K0>::Shear)
      s += std::log2(1 + t);
    else
      s += std::max(0.0, std::log2(t));
  }
  return s;
}

// d^{-k(N+1)} log ||F_*^k Φ|| at the archimedean place. `ainv` is A^{-1}
// over an exact field; its factorisation is re-evaluated at every precision.
template <class Kf, class K0>
Real arch_kernel(const Form<Kf>& phi, const Matrix<K0>& ainv, const Real& log_norm_a, unsigned d,
                 int N, int k) {
  const unsigned base = precision_bits();
  auto better = [](const K0& a, const K0& b) {
    if (Ring<K0>::is_zero(a)) return false;
    if (Ring<K0>::is_zero(b)) return true;
    return magnitude(convert<Kf, K0>(a)) > magnitude(convert<Kf, K0>(b));
  };
  const SubstPlan<K0> plan0 = plan_substitution<K0>(ainv, better);
  const double cost = plan_cost<Kf, K0>(plan0);
  const double log2a = std::max(0.0, to_double(log_norm_a) / std::log(2.0));
  const unsigned long dn1 = upow(d, static_cast<unsigned>(N + 1));

  Real top = 0;
  for (const auto& t : phi.terms()) top = std::max(top, magnitude(t.second));
  Real value = log(top);
  Form<Kf> psi = phi.scaled(Kf(Real(1) / top));
  for (int i = 1; i <= k; ++i) {
    const double degp = static_cast<double>(psi.degree()) * static_cast<double>(upow(d, N));
    Real l1 = 0;
    for (const auto& t : psi.terms()) l1 += magnitude(t.second);
    double bits = base + 64 + static_cast<double>(dn1) * std::log2(to_double(l1)) +
                  degp * (cost + log2a + 1) + N + (N + 1) * std::log2(degp + 1) +
                  std::log2(static_cast<double>(plan0.size()) + 2);
    if (bits > 4.0e6) fail(ErrorKind::Budget, "archimedean working precision exceeds budget");
    PrecisionGuard guard(static_cast<unsigned>(std::ceil(bits)));
    psi = psi.map([](const Kf& c) { return fresh(c); });
    Form<Kf> img = apply_plan(power_pushforward(psi, d),
                              map_plan<Kf>(plan0, [](const K0& t) { return convert<Kf, K0>(t); }));
    Real s = 0;
    for (const auto& t : img.terms()) s = std::max(s, magnitude(t.second));
    if (s == 0) fail(ErrorKind::Budget, "pushforward vanished numerically");
    value += log(s) / rpow(d, static_cast<long>(i) * (N + 1));
    psi = img.scaled(Kf(Real(1) / s));
  }
  return fresh(value);
}

long min_valuation(const Form<Rational>& f, unsigned long p) {
  long best = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    long v = valuation(t.second, p);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

Rational ppow(unsigned long p, long e) {
  Integer z;
  mpz_ui_pow_ui(z.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), z) : Rational(z);
}

struct Exhausted {};

// One attempt at precision r; throws Exhausted if every coefficient vanishes
// modulo the remaining precision. A nonzero residue has its true valuation,
// so the result is exact whenever the attempt completes.
Integer finite_attempt(const Form<Rational>& phi, const SubstPlan<Rational>& plan0, long mm,
                       unsigned long p, unsigned d, int N, int k, unsigned long r) {
  const long v0 = min_valuation(phi, p);
  ZprScope scope(p, r);
  const SubstPlan<Zpr> plan = map_plan<Zpr>(plan0, [](const Rational& t) { return Zpr(t); });
  const Rational s0 = ppow(p, -v0);
  Form<Zpr> psi = phi.map([&](const Rational& x) { return Zpr(Rational(x * s0)); });
  Integer a = v0;
  const Integer dn1 = Integer(upow(d, static_cast<unsigned>(N + 1)));
  unsigned long prec = r;
  for (int i = 1; i <= k; ++i) {
    Form<Zpr> img = apply_plan(power_pushforward(psi, d), plan);
    if (img.is_zero()) throw Exhausted{};
    unsigned long v = prec;
    for (const auto& t : img.terms()) v = std::min(v, t.second.valuation());
    if (v >= prec) throw Exhausted{};
    a = a * dn1 + Integer(mm) * img.degree() + v;
    if (v == 0) {
      psi = std::move(img);
      continue;
    }
    std::vector<std::pair<Monomial, Integer>> shifted;
    for (const auto& t : img.terms()) shifted.emplace_back(t.first, t.second.shifted_down(v).value());
    prec -= v;
    ZprScope::set_precision(prec);
    std::vector<Form<Zpr>::Term> terms;
    for (auto& [mono, z] : shifted) terms.emplace_back(mono, Zpr(z));
    psi = Form<Zpr>(img.nvars(), img.degree(), std::move(terms));
  }
  return a;
}

// Exact coefficient q with d^{-k(N+1)} log ||F_*^k Φ||_p = q log p.
Rational finite_kernel(const MapData<Rational>& m, const Form<Rational>& phi, unsigned long p,
                       int k) {
  const unsigned d = m.d;
  const int N = m.N;
  RatMatrix ainv = inverse(m.A);
  long mm = 0;
  bool first = true;
  for (const auto& x : ainv.data()) {
    if (x == 0) continue;
    long v = valuation(x, p);
    if (first || v < mm) mm = v;
    first = false;
  }
  const Rational unscale = ppow(p, -mm);
  RatMatrix c = ainv.map([&](const Rational& x) { return Rational(x * unscale); });
  const long vdet = valuation(determinant(c), p);

  // A step loses at most deg' v_p(det C) digits; this bound always suffices.
  unsigned long total = 0;
  {
    unsigned long deg = phi.degree();
    for (int i = 1; i <= k; ++i) {
      deg *= upow(d, static_cast<unsigned>(N));
      total += deg;
    }
  }
  const unsigned long safe = 32 + static_cast<unsigned long>(vdet) * total;

  auto better = [p](const Rational& a, const Rational& b) {
    if (a == 0) return false;
    if (b == 0) return true;
    return valuation(a, p) < valuation(b, p);
  };
  const SubstPlan<Rational> plan0 = plan_substitution<Rational>(c, better);

  Integer a;
  for (unsigned long r = std::min<unsigned long>(64, safe);; r = std::min(4 * r, safe)) {
    try {
      a = finite_attempt(phi, plan0, mm, p, d, N, k, r);
      break;
    } catch (const Exhausted&) {
      if (r >= safe) fail(ErrorKind::Budget, "p-adic precision exhausted");
    }
  }
  Integer den;
  Integer dn1(upow(d, static_cast<unsigned>(N + 1)));
  mpz_pow_ui(den.get_mpz_t(), dn1.get_mpz_t(), static_cast<unsigned long>(k));
  Rational q(Integer(-a), den);
  q.canonicalize();
  return q;
}

// N = 1, deg Φ = 1: F_*(c_0X_0 + c_1X_1) = ±L'^d with
// L' = (-(-c_0)^d Y_0 + c_1^d Y_1)(A^{-1}Y), so F_*^kΦ = ±L_k^{d^k}.
template <class K0>
std::vector<K0> linear_orbit(const Form<K0>& phi, const Matrix<K0>& ainv, unsigned d, int k) {
  std::vector<K0> c{phi.coeff(mono_unit(0)), phi.coeff(mono_unit(1))};
  for (int i = 0; i < k; ++i) {
    K0 m0 = Ring<K0>::one(), m1 = Ring<K0>::one();
    for (unsigned j = 0; j < d; ++j) {
      m0 *= -c[0];
      m1 *= c[1];
    }
    m0 = -m0;
    // (m0, m1) composed with A^{-1}: coefficient of Y_j is sum_i m_i ainv(i, j).
    c = {K0(m0 * ainv(0, 0) + m1 * ainv(1, 0)), K0(m0 * ainv(0, 1) + m1 * ainv(1, 1))};
  }
  return c;
}

// log ||(a X_0 + b X_1)^n|| from the binomial expansion.
Real log_norm_power(const Real& la, const Real& lb, bool a0, bool b0, unsigned long n) {
  if (a0) return n * lb;
  if (b0) return n * la;
  Real best = n * lb;
  Real lbin = 0;
  for (unsigned long j = 1; j <= n; ++j) {
    lbin += log(Real(n - j + 1)) - log(Real(j));
    Real t = lbin + j * la + (n - j) * lb;
    if (t > best) best = t;
  }
  return best;
}

unsigned checked_degree(unsigned deg, unsigned d, int N, int k, unsigned max_degree) {
  if (k < 0) fail(ErrorKind::Precondition, "depth must be non-negative");
  unsigned long out = deg;
  for (int i = 0; i < k; ++i) {
    out *= upow(d, static_cast<unsigned>(N));
    if (out > max_degree) fail(ErrorKind::Budget, "depth exceeds the degree budget");
  }
  if (out > max_degree) fail(ErrorKind::Budget, "depth exceeds the degree budget");
  return static_cast<unsigned>(out);
}

void finish(GreensValue& g, const StepConstants& c, unsigned deg, unsigned d, int N) {
  auto [lo, hi] = tail_bounds(c, deg, d, N, g.k);
  g.lower = g.value + lo;
  g.upper = g.value + hi;
}

std::pair<Real, Real> global_bounds(const StepConstants& c, Real log_norm_phi, unsigned deg,
                                    unsigned d, int N) {
  auto [lo, hi] = tail_bounds(c, deg, d, N, 0);
  return {log_norm_phi + lo, log_norm_phi + hi};
}

template <class Kf>
Real mahler_generic(const Form<Kf>& phi, long samples, std::uint64_t seed,
                    std::complex<double> (*to_c)(const Kf&)) {
  if (samples < 100) fail(ErrorKind::Precondition, "mahler_mc needs at least 100 samples");
  if (phi.is_zero()) fail(ErrorKind::Domain, "mahler measure of the zero form");
  const int n = phi.nvars();
  std::vector<std::pair<std::vector<unsigned>, std::complex<double>>> terms;
  for (const auto& [m, c] : phi.terms()) {
    std::vector<unsigned> e;
    for (int i = 0; i < n; ++i) e.push_back(mono_exp(m, i));
    terms.emplace_back(e, to_c(c));
  }
  // X_0 is fixed to 1 by homogeneity; the rest follow a shifted Kronecker
  // sequence with the generalised golden ratio.
  const int dim = n - 1;
  if (dim == 0) return Real(std::log(std::abs(terms.front().second)));
  double g = 2;
  for (int it = 0; it < 64; ++it) g = std::pow(1 + g, 1.0 / (dim + 1));
  std::vector<double> alpha(dim), shift(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int j = 0; j < dim; ++j) {
    alpha[j] = std::fmod(1 / std::pow(g, j + 1), 1.0);
    shift[j] = unif(rng);
  }
  const double tau = 2 * std::acos(-1.0);
  double sum = 0;
  long used = 0;
  std::vector<std::complex<double>> z(n);
  z[0] = 1;
  for (long s = 1; s <= samples; ++s) {
    for (int j = 0; j < dim; ++j) {
      double th = std::fmod(shift[j] + s * alpha[j], 1.0);
      z[j + 1] = std::polar(1.0, tau * th);
    }
    std::complex<double> val = 0;
    for (const auto& [e, c] : terms) {
      std::complex<double> t = c;
      for (int i = 1; i < n; ++i)
        if (e[i]) t *= std::pow(z[i], static_cast<int>(e[i]));
      val += t;
    }
    double a = std::abs(val);
    if (a == 0) continue;
    sum += std::log(a);
    ++used;
  }
  return Real(sum / static_cast<double>(used));
}

}  // namespace

StepConstants step_constants(const RatMatrix& a, const Place& v) { return constants_for(a, v); }
StepConstants step_constants(const Matrix<Cyclotomic>& a, const Place& v) {
  return constants_for(a, v);
}

std::pair<Real, Real> tail_bounds(const StepConstants& c, unsigned deg, unsigned d, int N, int k) {
  Real dk = rpow(d, -k);
  Real dkn = rpow(d, -static_cast<long>(k) * (N + 1));
  Real geo = Real(deg) * dk / (d - 1);
  Real tail = N * c.b * dkn / (rpow(d, N + 1) - 1);
  return {-geo * c.a_lo - tail, geo * c.a_hi + tail};
}

GreensValue greens_estimate(const MapData<Rational>& m, const Form<Rational>& phi, const Place& v,
                            int k, unsigned max_degree) {
  if (phi.is_zero()) fail(ErrorKind::Domain, "Greens function of the zero form");
  GreensValue g;
  g.place = v;
  g.k = k;
  g.degree_reached = checked_degree(phi.degree(), m.d, m.N, k, max_degree);
  if (m.N == 1 && phi.degree() == 1) {
    auto c = linear_orbit(phi, inverse(m.A), m.d, k);
    const unsigned long n = upow(m.d, static_cast<unsigned>(k));
    if (v.is_archimedean()) {
      Real la = c[0] == 0 ? Real(0) : log_abs(c[0], v);
      Real lb = c[1] == 0 ? Real(0) : log_abs(c[1], v);
      g.value = log_norm_power(la, lb, c[0] == 0, c[1] == 0, n) / rpow(m.d, 2L * k);
    } else {
      long e = 0;
      bool first = true;
      for (const auto& x : c) {
        if (x == 0) continue;
        long w = valuation(x, v.p);
        if (first || w < e) e = w;
        first = false;
      }
      g.exact = Rational(Integer(-e), Integer(upow(m.d, static_cast<unsigned>(k))));
      g.exact->canonicalize();
      g.value = real_from(*g.exact) * v.log_p();
    }
  } else if (v.is_archimedean()) {
    Form<Real> f = phi.map([](const Rational& x) { return real_from(x); });
    g.value = arch_kernel<Real, Rational>(f, inverse(m.A), matrix_norm(m.A, v), m.d, m.N, k);
  } else {
    g.exact = finite_kernel(m, phi, v.p, k);
    g.value = real_from(*g.exact) * v.log_p();
  }
  finish(g, step_constants(m.A, v), phi.degree(), m.d, m.N);
  return g;
}

GreensValue greens_estimate(const MapData<Rational>& m, const Form<Complex>& phi, const Place& v,
                            int k, unsigned max_degree) {
  if (!v.is_archimedean()) fail(ErrorKind::UnsupportedDomain, "complex form at a finite place");
  if (phi.is_zero()) fail(ErrorKind::Domain, "Greens function of the zero form");
  GreensValue g;
  g.place = v;
  g.k = k;
  g.degree_reached = checked_degree(phi.degree(), m.d, m.N, k, max_degree);
  g.value = arch_kernel<Complex, Rational>(phi, inverse(m.A), matrix_norm(m.A, v), m.d, m.N, k);
  finish(g, step_constants(m.A, v), phi.degree(), m.d, m.N);
  return g;
}

GreensValue greens_estimate(const MapData<Cyclotomic>& m, const Form<Cyclotomic>& phi,
                            const Place& v, int k, unsigned max_degree) {
  if (phi.is_zero()) fail(ErrorKind::Domain, "Greens function of the zero form");
  bool rational = true;
  for (const auto& x : m.A.data()) rational = rational && x.is_rational();
  for (const auto& t : phi.terms()) rational = rational && t.second.is_rational();
  if (rational) {
    auto down = [](const Cyclotomic& x) { return x.rational_value(); };
    return greens_estimate(MapData<Rational>(m.A.map(down), m.d), phi.map(down), v, k, max_degree);
  }
  if (!v.is_archimedean())
    fail(ErrorKind::UnsupportedDomain, "cyclotomic coefficients at a finite place");
  GreensValue g;
  g.place = v;
  g.k = k;
  g.degree_reached = checked_degree(phi.degree(), m.d, m.N, k, max_degree);
  if (m.N == 1 && phi.degree() == 1) {
    auto c = linear_orbit(phi, inverse(m.A), m.d, k);
    std::size_t bits = 0;
    for (const auto& x : c)
      for (const auto& q : x.coeffs())
        bits = std::max(bits, mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2));
    Real la, lb;
    {
      PrecisionGuard guard(precision_bits() + 64 + static_cast<unsigned>(bits));
      if (!c[0].is_zero()) la = log(abs(c[0].embed()));
      if (!c[1].is_zero()) lb = log(abs(c[1].embed()));
    }
    const unsigned long n = upow(m.d, static_cast<unsigned>(k));
    g.value = log_norm_power(la, lb, c[0].is_zero(), c[1].is_zero(), n) / rpow(m.d, 2L * k);
    finish(g, step_constants(m.A, v), phi.degree(), m.d, m.N);
    return g;
  }
  Form<Complex> f = phi.map([](const Cyclotomic& x) { return x.embed(); });
  g.value = arch_kernel<Complex, Cyclotomic>(f, inverse(m.A), matrix_norm(m.A, v), m.d, m.N, k);
  finish(g, step_constants(m.A, v), phi.degree(), m.d, m.N);
  return g;
}

std::pair<Real, Real> greens_global_bounds(const MapData<Rational>& m, const Form<Rational>& phi,
                                           const Place& v) {
  return global_bounds(step_constants(m.A, v), form_norm(phi, v), phi.degree(), m.d,
                                 m.N);
}

std::pair<Real, Real> greens_global_bounds(const MapData<Cyclotomic>& m,
                                           const Form<Cyclotomic>& phi, const Place& v) {
  return global_bounds(step_constants(m.A, v), form_norm(phi, v), phi.degree(), m.d,
                                   m.N);
}

int max_depth(unsigned deg, unsigned d, int N, unsigned max_degree) {
  if (deg > max_degree) fail(ErrorKind::Budget, "form degree exceeds the degree budget");
  int k = 0;
  unsigned long cur = deg == 0 ? 1 : deg;
  const unsigned long step = upow(d, static_cast<unsigned>(N));
  while (cur * step <= max_degree && k < 64) {
    cur *= step;
    ++k;
  }
  return k;
}

int default_depth(const StepConstants& c, unsigned deg, unsigned d, int N, double width,
                  unsigned max_degree, std::size_t max_terms) {
  int cap = max_depth(deg, d, N, max_degree);
  auto monomials = [N](unsigned long e) {
    double r = 1;
    for (int i = 1; i <= N; ++i) r = r * static_cast<double>(e + static_cast<unsigned long>(i)) / i;
    return r;
  };
  unsigned long e = deg;
  for (int k = 1; k <= cap; ++k) {
    e *= upow(d, static_cast<unsigned>(N));
    if (monomials(e) > static_cast<double>(max_terms)) {
      cap = k - 1;
      break;
    }
  }
  for (int k = 0; k < cap; ++k) {
    auto [lo, hi] = tail_bounds(c, deg, d, N, k);
    if (hi - lo < width) return k;
  }
  return cap;
}

Real mahler_mc(const Form<Rational>& phi, long samples, std::uint64_t seed) {
  return mahler_generic<Rational>(phi, samples, seed, [](const Rational& q) {
    return std::complex<double>(q.get_d(), 0);
  });
}

Real mahler_mc(const Form<Complex>& phi, long samples, std::uint64_t seed) {
  return mahler_generic<Complex>(phi, samples, seed, [](const Complex& z) {
    return std::complex<double>(to_double(z.re), to_double(z.im));
  });
}

}  // namespace mincrit
