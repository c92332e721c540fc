#include "mincrit/heights.hpp"

#include <algorithm>

namespace mincrit {

std::string to_string(HeightKind k) {
  switch (k) {
    case HeightKind::PGL: return "pgl";
    case HeightKind::Hom: return "hom";
    case HeightKind::Crit: return "crit";
    case HeightKind::Divisor: return "divisor";
    case HeightKind::Naive: return "naive";
  }
  return "?";
}

void HeightReport::assemble() {
  std::sort(per_place.begin(), per_place.end(),
            [](const PlaceTerm& a, const PlaceTerm& b) { return a.place < b.place; });
  total = 0;
  lower = 0;
  upper = 0;
  for (const auto& t : per_place) {
    total += t.value;
    lower += t.lower;
    upper += t.upper;
  }
}

Integer factorial_int(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Real log_plus_int(const Integer& n, const Place& v) { return log_plus(Rational(n), v); }

namespace {

void add_primes(std::vector<unsigned long>& out, const Rational& q) {
  if (q == 0) return;
  auto s = support_primes(q);
  out.insert(out.end(), s.begin(), s.end());
}

PlaceTerm exact_term(const Place& v, const Real& x) { return PlaceTerm{v, x, x, x}; }

// Monomial-linear maps: F_i = sum_j a_ij X_j^d.
bool as_monomial_map(const std::vector<Form<Rational>>& f, RatMatrix& a) {
  const int n = static_cast<int>(f.size());
  const unsigned d = f[0].degree();
  a = RatMatrix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const auto& [m, c] : f[static_cast<std::size_t>(i)].terms()) {
      int hit = -1;
      for (int j = 0; j < n; ++j)
        if (mono_exp(m, j) == d) hit = j;
      if (hit < 0) return false;
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(hit)) = c;
    }
  }
  return true;
}

void check_map(const std::vector<Form<Rational>>& f) {
  const int n = static_cast<int>(f.size());
  if (n < 2 || n > 4) fail(ErrorKind::Precondition, "map needs 2 to 4 components");
  for (const auto& c : f) {
    if (c.nvars() != n) fail(ErrorKind::Domain, "component has the wrong number of variables");
    if (c.degree() != f[0].degree()) fail(ErrorKind::Domain, "components differ in degree");
  }
  if (f[0].degree() < 1) fail(ErrorKind::Precondition, "degree must be positive");
}

Real log_map_norm(const std::vector<Form<Rational>>& f, const Place& v) {
  Real best = 0;
  bool first = true;
  for (const auto& c : f) {
    if (c.is_zero()) continue;
    Real x = form_norm(c, v);
    if (first || x > best) best = x;
    first = false;
  }
  if (first) fail(ErrorKind::Domain, "zero map");
  return best;
}

}  // namespace

Real lambda_pgl(const RatMatrix& a, const Place& v) {
  const int n = static_cast<int>(a.size());
  Rational det = determinant(a);
  if (det == 0) fail(ErrorKind::Domain, "matrix is singular");
  return matrix_norm(a, v) - log_abs(det, v) / n;
}

std::vector<Place> pgl_places(const RatMatrix& a) {
  std::vector<unsigned long> primes;
  for (const auto& x : a.data()) add_primes(primes, x);
  add_primes(primes, determinant(a));
  return places_from_primes(primes);
}

HeightReport h_pgl(const RatMatrix& a) {
  HeightReport r;
  r.kind = HeightKind::PGL;
  for (const auto& v : pgl_places(a)) r.per_place.push_back(exact_term(v, lambda_pgl(a, v)));
  r.assemble();
  return r;
}

Rational sylvester_resultant(const Form<Rational>& f, const Form<Rational>& g) {
  if (f.nvars() != 2 || g.nvars() != 2) fail(ErrorKind::Domain, "binary forms expected");
  const unsigned m = f.degree(), n = g.degree();
  const std::size_t s = m + n;
  if (s == 0) return 1;
  RatMatrix syl(s);
  auto coeff = [](const Form<Rational>& h, unsigned i) {
    return h.coeff(mono_make({h.degree() - i, i}));
  };
  for (unsigned r = 0; r < n; ++r)
    for (unsigned i = 0; i <= m; ++i) syl(r, r + i) = coeff(f, i);
  for (unsigned r = 0; r < m; ++r)
    for (unsigned i = 0; i <= n; ++i) syl(n + r, r + i) = coeff(g, i);
  return determinant(syl);
}

Rational hom_resultant(const std::vector<Form<Rational>>& f) {
  check_map(f);
  RatMatrix a;
  if (as_monomial_map(f, a)) {
    Rational det = determinant(a);
    Integer e = 1;
    for (std::size_t i = 1; i < f.size(); ++i) e *= f[0].degree();
    Rational out = 1;
    for (Integer i = 0; i < e; ++i) out *= det;
    return out;
  }
  if (f.size() != 2) fail(ErrorKind::UnsupportedDomain, "resultant of a general map with N > 1");
  return sylvester_resultant(f[0], f[1]);
}

Real lambda_hom(const std::vector<Form<Rational>>& f, const Place& v) {
  check_map(f);
  const int N = static_cast<int>(f.size()) - 1;
  const unsigned d = f[0].degree();
  RatMatrix a;
  if (as_monomial_map(f, a)) {
    // log|det^{d^N}| / ((N+1) d^N) without forming the power.
    Rational det = determinant(a);
    if (det == 0) fail(ErrorKind::Domain, "map is degenerate");
    return log_map_norm(f, v) - log_abs(det, v) / (N + 1);
  }
  Rational res = hom_resultant(f);
  if (res == 0) fail(ErrorKind::Domain, "map is degenerate");
  Real scale = 1;
  for (int i = 0; i < N; ++i) scale *= d;
  return log_map_norm(f, v) - log_abs(res, v) / ((N + 1) * scale);
}

HeightReport h_hom(const std::vector<Form<Rational>>& f) {
  check_map(f);
  std::vector<unsigned long> primes;
  for (const auto& c : f)
    for (const auto& t : c.terms()) add_primes(primes, t.second);
  RatMatrix a;
  if (as_monomial_map(f, a))
    add_primes(primes, determinant(a));
  else
    add_primes(primes, hom_resultant(f));
  HeightReport r;
  r.kind = HeightKind::Hom;
  for (const auto& v : places_from_primes(primes))
    r.per_place.push_back(exact_term(v, lambda_hom(f, v)));
  r.assemble();
  return r;
}

int default_lyapunov_depth(const MapData<Rational>& m, const Place& v) {
  StepConstants c = step_constants(m.A, v);
  double target = 1e-6 / ((m.d - 1.0) * (m.N + 1));
  return default_depth(m, Form<Rational>::variable(m.nvars(), 0), c, target);
}

LyapunovLocal local_lyapunov(const MapData<Rational>& m, const Place& v, int k) {
  if (k < 0) k = default_lyapunov_depth(m, v);
  LyapunovLocal out;
  out.place = v;
  out.k = k;
  Real shift = log_abs(determinant(m.A), v) + m.N * log_abs(Rational(m.d), v);
  Real sum = 0, lo = 0, hi = 0;
  for (int i = 0; i <= m.N; ++i) {
    GreensValue g = greens_estimate(m, Form<Rational>::variable(m.nvars(), i), v, k);
    sum += g.value;
    lo += g.lower;
    hi += g.upper;
    out.parts.push_back(std::move(g));
  }
  const Real w = m.d - 1;
  out.value = w * sum + shift;
  out.lower = w * lo + shift;
  out.upper = w * hi + shift;
  return out;
}

HeightReport critical_height(const MapData<Rational>& m, int k) {
  HeightReport r;
  r.kind = HeightKind::Crit;
  int kmax = 0;
  for (const auto& v : bad_places(m.A, m.d, m.N)) {
    LyapunovLocal l = local_lyapunov(m, v, k);
    kmax = std::max(kmax, l.k);
    r.per_place.push_back(PlaceTerm{v, l.value, l.lower, l.upper});
  }
  r.k = kmax;
  r.assemble();
  return r;
}

DivisorHeight divisor_canonical_height(const MapData<Rational>& m, const Form<Rational>& phi,
                                       int k) {
  if (phi.is_zero()) fail(ErrorKind::Domain, "zero form");
  if (phi.nvars() != m.nvars()) fail(ErrorKind::Domain, "form has the wrong number of variables");
  std::vector<unsigned long> primes;
  for (const auto& v : bad_places(m.A, m.d, m.N))
    if (!v.is_archimedean()) primes.push_back(v.p);
  for (const auto& t : phi.terms()) add_primes(primes, t.second);
  DivisorHeight out;
  out.canonical.kind = HeightKind::Divisor;
  out.naive.kind = HeightKind::Naive;
  int kmax = 0;
  for (const auto& v : places_from_primes(primes)) {
    int kv = k;
    if (kv < 0) kv = default_depth(m, phi, step_constants(m.A, v));
    GreensValue g = greens_estimate(m, phi, v, kv);
    kmax = std::max(kmax, g.k);
    out.canonical.per_place.push_back(PlaceTerm{v, g.value, g.lower, g.upper});
    out.naive.per_place.push_back(exact_term(v, form_norm(phi, v)));
  }
  out.canonical.k = kmax;
  out.canonical.assemble();
  out.naive.assemble();
  return out;
}

}  // namespace mincrit
