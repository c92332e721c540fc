#include "mincrit/bounds.hpp"

#include <algorithm>
#include <map>

namespace mincrit {

namespace {

const double kPassTol = 1e-12;
const double kFalsifyTol = 1e-9;

const std::map<BoundKind, std::string> kNames{
    {BoundKind::ThExp, "thExp"},         {BoundKind::LyapLower, "lyapLower"},
    {BoundKind::LyapUpper, "lyapUpper"}, {BoundKind::Coc, "coc"},
    {BoundKind::Conjugate, "conjugate"}, {BoundKind::FinalProp, "finalProp"}};

Real lg(long n) { return log(Real(n)); }
Real lg(const Integer& n) { return log(real_from(n)); }

Interval of(const HeightReport& r) { return {r.lower, r.upper}; }

}  // namespace

BoundCheck make_check(std::string label, Interval small, Interval large) {
  BoundCheck c{std::move(label), std::move(small), std::move(large), 0, Verdict::Pass};
  c.margin = c.large.lo - c.small.hi;
  if (c.margin >= -kPassTol)
    c.verdict = Verdict::Pass;
  else if (c.large.hi < c.small.lo - kFalsifyTol)
    c.verdict = Verdict::Falsified;
  else
    c.verdict = Verdict::Inconclusive;
  return c;
}

namespace {

Interval affine(const Interval& x, const Real& scale, const Real& shift) {
  Real a = x.lo * scale + shift, b = x.hi * scale + shift;
  return a <= b ? Interval{a, b} : Interval{b, a};
}

Real pow_int(unsigned d, int e) {
  Real out = 1;
  for (int i = 0; i < e; ++i) out *= d;
  return out;
}

void finish(BoundReport& r) {
  r.verdict = Verdict::Pass;
  bool first = true;
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::Falsified) r.verdict = Verdict::Falsified;
    if (c.verdict == Verdict::Inconclusive && r.verdict == Verdict::Pass)
      r.verdict = Verdict::Inconclusive;
    if (first || c.margin < r.min_margin) r.min_margin = c.margin;
    first = false;
  }
}

// The per-place checks summed: the global inequality.
void add_sum_check(BoundReport& r) {
  Interval small{0, 0}, large{0, 0};
  for (const auto& c : r.checks) {
    small.lo += c.small.lo;
    small.hi += c.small.hi;
    large.lo += c.large.lo;
    large.hi += c.large.hi;
  }
  r.checks.push_back(make_check("sum", small, large));
}

void add_primes(std::vector<unsigned long>& out, const Rational& q) {
  if (q == 0) return;
  auto s = support_primes(q);
  out.insert(out.end(), s.begin(), s.end());
}

void require_large_degree(int N, unsigned d) {
  if (static_cast<long>(d) <= N * N + N + 1)
    fail(ErrorKind::Precondition, "needs d > N^2 + N + 1");
}

// Theorem: A normalized, d > N^2+N+1.
void check_th_exp(BoundReport& r, const RatMatrix& a, unsigned d, int k) {
  const int N = static_cast<int>(a.size()) - 1;
  require_large_degree(N, d);
  if (!is_normalized(a)) fail(ErrorKind::Precondition, "A is not a normalized lift");
  const Real l2 = real_log2();
  const Real dn1 = pow_int(d, N + 1) - 1;
  const Real dd = d;
  Real h = h_pgl(a).total;
  Interval crit = of(critical_height(MapData<Rational>(a, d), k));
  // hcrit <= N(N+1) h + (N+1) h(2N!) + N(N+1)(d-1)/(d^{N+1}-1) h(2)
  Real c1 = ((N + 1) * lg(2 * factorial_int(N)) + N * (N + 1) * (dd - 1) / dn1 * l2) / (N * (N + 1));
  r.checks.push_back(make_check("hcrit/(N(N+1)) - C1 <= hPGL",
                                affine(crit, Real(1) / (N * (N + 1)), -c1), Interval::exact(h)));
  // hcrit >= c h - (d-1)/(dN) h(N!) - (N+1)((d^{N+1}-1)+N(d-1))/(d(d^{N+1}-1)) h(2)
  Real c = (dd - (N * N + N + 1)) / (dd * N);
  Real c2 = ((dd - 1) / (dd * N) * lg(factorial_int(N)) +
             (N + 1) * (dn1 + N * (dd - 1)) / (dd * dn1) * l2) / c;
  r.checks.push_back(
      make_check("hPGL <= hcrit/c + C2", Interval::exact(h), affine(crit, 1 / c, c2)));
}

std::vector<Place> lyapunov_places(const RatMatrix& a, unsigned d) {
  const int N = static_cast<int>(a.size()) - 1;
  std::vector<unsigned long> primes;
  for (const auto& v : bad_places(a, d, N))
    if (!v.is_archimedean()) primes.push_back(v.p);
  add_primes(primes, minor(a, 1, 0));
  return places_from_primes(primes);
}

void check_lyap_lower(BoundReport& r, const RatMatrix& a, unsigned d, int k) {
  const int N = static_cast<int>(a.size()) - 1;
  require_large_degree(N, d);
  RatMatrix b = inverse(a);
  if (!is_normalized(a) || b(0, 1) != 1)
    fail(ErrorKind::Precondition, "A^{-1} must have a 1 in every row and at (0,1)");
  Rational m10 = minor(a, 1, 0), det = determinant(a);
  if (m10 == 0) fail(ErrorKind::Precondition, "minor M_{1,0} vanishes");
  const Real dd = d;
  const Real dn1 = pow_int(d, N + 1) - 1;
  MapData<Rational> m(a, d);
  for (const auto& v : lyapunov_places(a, d)) {
    LyapunovLocal l = local_lyapunov(m, v, k);
    Real rhs = (dd - (N * N + N + 1)) / (dd * N) * matrix_norm(a, v) +
               N * (dd - 1) / dd * log_abs(m10, v) +
               (dd * N - (N * N + 1) * (dd - 1)) / (dd * N) * log_abs(det, v) -
               (dd - 1) / (dd * N) * log_plus_int(factorial_int(N), v) -
               ((N + 1) / dd + N * (N + 1) * (dd - 1) / (dd * dn1)) * log_plus(Rational(2), v) +
               N * log_abs(Rational(d), v);
    r.checks.push_back(make_check("L_" + v.name(), Interval::exact(rhs), {l.lower, l.upper}));
  }
  add_sum_check(r);
}

void check_lyap_upper(BoundReport& r, const RatMatrix& a, unsigned d, int k) {
  const int N = static_cast<int>(a.size()) - 1;
  const Real dd = d;
  const Real dn1 = pow_int(d, N + 1) - 1;
  Rational det = determinant(a);
  MapData<Rational> m(a, d);
  for (const auto& v : bad_places(a, d, N)) {
    LyapunovLocal l = local_lyapunov(m, v, k);
    // The determinant enters through log|det A|.
    Real rhs = N * (N + 1) * matrix_norm(a, v) - N * log_abs(det, v) +
               (N + 1) * log_plus_int(2 * factorial_int(N), v) +
               N * (N + 1) * (dd - 1) / dn1 * log_plus(Rational(2), v) + N * log_abs(Rational(d), v);
    r.checks.push_back(make_check("L_" + v.name(), {l.lower, l.upper}, Interval::exact(rhs)));
  }
  add_sum_check(r);
}

std::vector<Place> map_places(const std::vector<std::vector<Form<Rational>>>& maps,
                              const RatMatrix& b) {
  std::vector<unsigned long> primes;
  for (const auto& f : maps) {
    for (const auto& c : f)
      for (const auto& t : c.terms()) add_primes(primes, t.second);
    add_primes(primes, hom_resultant(f));
  }
  for (const auto& x : b.data()) add_primes(primes, x);
  add_primes(primes, determinant(b));
  add_primes(primes, Rational(2 * factorial_int(static_cast<int>(b.size()))));
  return places_from_primes(primes);
}

void check_coc(BoundReport& r, const std::vector<Form<Rational>>& f, const RatMatrix& b) {
  const int N = static_cast<int>(f.size()) - 1;
  const int d = static_cast<int>(f[0].degree());
  auto fb = conjugate_map(f, b);
  for (const auto& v : map_places({f, fb}, b)) {
    Real rhs = lambda_hom(f, v) + (d + N) * lambda_pgl(b, v) +
               (d + N) * log_plus(Rational(2), v) + log_plus_int(factorial_int(N + 1), v);
    r.checks.push_back(
        make_check("lambda_" + v.name(), Interval::exact(lambda_hom(fb, v)), Interval::exact(rhs)));
  }
  add_sum_check(r);
}

void check_conjugate(BoundReport& r, const std::vector<Form<Rational>>& f) {
  const int N = static_cast<int>(f.size()) - 1;
  const int d = static_cast<int>(f[0].degree());
  Monomialized m = monomialize(f);
  Real hh = h_hom(f).total;
  Real rhs = (1 + (d + N) * (N + 1)) * hh + (d + N) * lg(factorial_int(N)) +
             (d + N) * (N + 1) * lg(d) + (d + N + 1) * lg(factorial_int(N + 1)) +
             (d + N) * (1 + 2 * N * (N + 1) * (d - 1)) * real_log2();
  r.checks.push_back(make_check("hPGL(B)", Interval::exact(m.h_pgl_b), Interval::exact(m.bound)));
  r.checks.push_back(
      make_check("hPGL(A)", Interval::exact(h_pgl(m.A).total), Interval::exact(rhs)));
}

void check_final_prop(BoundReport& r, const RatMatrix& a, unsigned d, const Form<Rational>& phi,
                      int k) {
  const int N = static_cast<int>(a.size()) - 1;
  const Real deg = phi.degree();
  const Real dd = d;
  const Real dn1 = pow_int(d, N + 1) - 1;
  const Real l2 = real_log2();
  Real h = h_pgl(a).total;
  DivisorHeight dh = divisor_canonical_height(MapData<Rational>(a, d), phi, k);
  Interval diff{dh.canonical.lower - dh.naive.total, dh.canonical.upper - dh.naive.total};
  Real lo = -deg / (dd - 1) * h - (deg / (dd - 1) + N / dn1) * l2;
  Real hi = N * deg / (dd - 1) * h + deg / (dd - 1) * lg(2 * factorial_int(N)) + N / dn1 * l2;
  r.checks.push_back(make_check("lower", Interval::exact(lo), diff));
  r.checks.push_back(make_check("upper", diff, Interval::exact(hi)));
}

Rational random_rational(std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> num(-range, range), den(1, 3);
  return rat(num(rng), den(rng));
}

RatMatrix random_matrix(std::mt19937_64& rng, int n, long range, bool integral = false) {
  for (;;) {
    RatMatrix m(static_cast<std::size_t>(n));
    for (auto& x : m.data()) {
      x = random_rational(rng, range);
      if (integral) x = x.get_num();
    }
    if (!is_singular(m)) return m;
  }
}

Form<Rational> random_form(std::mt19937_64& rng, int nvars, unsigned deg) {
  for (;;) {
    Form<Rational> f(nvars, deg);
    for (unsigned t = 0; t <= deg + 1; ++t) {
      std::vector<unsigned> e(static_cast<std::size_t>(nvars), 0);
      for (unsigned j = 0; j < deg; ++j) e[rng() % static_cast<unsigned>(nvars)]++;
      f += Form<Rational>::monomial(nvars, e, random_rational(rng, 6));
    }
    if (!f.is_zero()) return f;
  }
}

std::string describe(const RatMatrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < a.size(); ++j) s += (j ? "," : "") + to_string(a(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace

std::string to_string(BoundKind k) { return kNames.at(k); }

BoundKind parse_bound_kind(const std::string& s) {
  for (const auto& [k, name] : kNames)
    if (name == s) return k;
  fail(ErrorKind::Parse, "unknown bound: " + s);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Falsified: return "falsified";
  }
  return "?";
}

namespace {

BoundReport verify_at(const RatMatrix& a, unsigned d, BoundKind which, const BoundInputs& in) {
  MapData<Rational> m(a, d);  // validates A, d, N
  BoundReport r;
  r.which = which;
  auto f = in.f ? *in.f : map_components(m);
  switch (which) {
    case BoundKind::ThExp: check_th_exp(r, a, d, in.k); break;
    case BoundKind::LyapLower: check_lyap_lower(r, a, d, in.k); break;
    case BoundKind::LyapUpper: check_lyap_upper(r, a, d, in.k); break;
    case BoundKind::Coc:
      if (!in.B) fail(ErrorKind::Precondition, "coc needs a matrix B");
      check_coc(r, f, *in.B);
      break;
    case BoundKind::Conjugate:
      if (in.B) f = conjugate_map(f, *in.B);
      check_conjugate(r, f);
      break;
    case BoundKind::FinalProp:
      if (!in.phi) fail(ErrorKind::Precondition, "finalProp needs a form");
      check_final_prop(r, a, d, *in.phi, in.k);
      break;
  }
  finish(r);
  return r;
}

}  // namespace

// Without an explicit depth, start shallow and deepen only while undecided.
BoundReport verify_bounds(const RatMatrix& a, unsigned d, BoundKind which, const BoundInputs& in) {
  if (in.k >= 0) return verify_at(a, d, which, in);
  BoundReport r;
  for (int k : {1, 2, -1}) {
    BoundInputs step = in;
    step.k = k;
    r = verify_at(a, d, which, step);
    if (r.verdict != Verdict::Inconclusive) break;
  }
  return r;
}

RatMatrix sample_normalized(std::mt19937_64& rng, int N, long range) {
  const std::size_t n = static_cast<std::size_t>(N + 1);
  for (;;) {
    RatMatrix b(n);
    for (auto& x : b.data()) x = random_rational(rng, range);
    b(0, 1) = 1;
    for (std::size_t i = 1; i < n; ++i) b(i, rng() % n) = 1;
    if (is_singular(b)) continue;
    RatMatrix a = inverse(b);
    if (minor(a, 1, 0) != 0) return a;
  }
}

BoundSuite run_bound_suite(BoundKind which, int N, unsigned d, int samples, std::uint64_t seed) {
  if (samples < 1) fail(ErrorKind::Precondition, "need at least one sample");
  if ((which == BoundKind::Coc) && N != 1)
    fail(ErrorKind::UnsupportedDomain, "coc samples general maps, which needs N = 1");
  std::mt19937_64 rng(seed);
  BoundSuite s;
  s.which = which;
  s.N = N;
  s.d = d;
  for (int t = 0; t < samples; ++t) {
    BoundSample smp;
    BoundInputs in;
    RatMatrix a;
    switch (which) {
      case BoundKind::ThExp:
      case BoundKind::LyapLower: a = sample_normalized(rng, N); break;
      case BoundKind::LyapUpper:
      case BoundKind::FinalProp: a = random_matrix(rng, N + 1, 6); break;
      case BoundKind::Coc: {
        a = RatMatrix::identity(2);
        std::vector<Form<Rational>> f;
        do {
          f = {random_form(rng, 2, d), random_form(rng, 2, d)};
        } while (sylvester_resultant(f[0], f[1]) == 0);
        in.f = f;
        in.B = random_matrix(rng, 2, 4, true);
        smp.description = "f=(" + to_string(f[0].coeff(mono_make({d, 0}))) + ",...), B=" +
                          describe(*in.B);
        break;
      }
      case BoundKind::Conjugate:
        a = random_matrix(rng, N + 1, 6);
        if (N == 1) in.B = random_matrix(rng, 2, 4, true);
        break;
    }
    if (which == BoundKind::FinalProp) {
      // degree 1 to 3, capped so the first iterate has degree <= 128
      unsigned long dn = 1;
      for (int i = 0; i < N; ++i) dn *= d;
      unsigned long top = std::clamp(128 / dn, 1ul, 3ul);
      in.phi = random_form(rng, N + 1, 1 + static_cast<unsigned>(rng() % top));
    }
    if (smp.description.empty()) smp.description = "A=" + describe(a);
    smp.report = verify_bounds(a, d, which, in);
    s.samples.push_back(std::move(smp));
  }
  s.verdict = Verdict::Pass;
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const auto& r = s.samples[i].report;
    if (r.verdict == Verdict::Falsified) s.verdict = Verdict::Falsified;
    if (r.verdict == Verdict::Inconclusive && s.verdict == Verdict::Pass)
      s.verdict = Verdict::Inconclusive;
    if (i == 0 || r.min_margin < s.min_margin) s.min_margin = r.min_margin;
  }
  return s;
}

CorollaryBound corollary_bound(int N, unsigned d) {
  if (N < 1 || N > 3) fail(ErrorKind::Precondition, "N must be 1, 2 or 3");
  require_large_degree(N, d);
  const Real dd = d;
  const Real dn1 = pow_int(d, N + 1) - 1;
  const Real gap = dd - (N * N + N + 1);
  CorollaryBound c;
  c.height_bound = (dd - 1) / gap * lg(factorial_int(N)) +
                   N * (N + 1) * (dn1 + N * (dd - 1)) / (dn1 * gap) * real_log2();
  c.degree_bound = 1;
  for (int i = 0; i <= N; ++i) c.degree_bound *= d;
  return c;
}

}  // namespace mincrit
