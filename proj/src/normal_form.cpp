#include "mincrit/normal_form.hpp"

#include <algorithm>

namespace mincrit {

namespace {

const double kTol = 1e-9;

Matrix<Complex> to_complex(const RatMatrix& a) {
  return a.map([](const Rational& x) { return Complex(x); });
}

Real magnitude(const Rational& x) { return real_from(abs(x)); }
Real magnitude(const Complex& x) { return abs(x); }

bool is_one(const Rational& x) { return x == 1; }
bool is_one(const Complex& x) { return abs(x - Complex(Real(1))) < kTol; }

template <class K>
K power(K x, Integer e) {
  K out = Ring<K>::one();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out *= x;
    e /= 2;
    if (e > 0) x *= x;
  }
  return out;
}

bool root(const Rational& x, const Integer& n, Rational& out) {
  if (!n.fits_ulong_p()) return false;
  return exact_root(x, n.get_ui(), out);
}

// Positive real root for positive reals, the real root of a negative real
// for odd n, otherwise the principal root.
bool root(const Complex& x, const Integer& n, Complex& out) {
  Real nn = real_from(n);
  if (x.im == 0 && x.re > 0) {
    out = Complex(Real(boost::multiprecision::pow(x.re, Real(1) / nn)));
    return true;
  }
  if (x.im == 0 && x.re < 0 && mpz_odd_p(n.get_mpz_t())) {
    out = Complex(Real(-boost::multiprecision::pow(Real(-x.re), Real(1) / nn)));
    return true;
  }
  Real r = boost::multiprecision::pow(abs(x), Real(1) / nn);
  Real t = boost::multiprecision::atan2(x.im, x.re) / nn;
  out = polar(r, t);
  return true;
}

// Largest magnitude nonzero entry per row, lowest column on ties.
template <class K>
std::vector<int> default_sigma(const Matrix<K>& b) {
  std::vector<int> s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    int best = -1;
    Real bm = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (Ring<K>::is_zero(b(i, j))) continue;
      Real m = magnitude(b(i, j));
      if (best < 0 || m > bm) {
        best = static_cast<int>(j);
        bm = m;
      }
    }
    if (best < 0) fail(ErrorKind::Domain, "matrix has a zero row");
    s.push_back(best);
  }
  return s;
}

// Solves D_i^{-d} B_{i,sigma(i)} D_{sigma(i)} = 1 for all i; false when a
// root does not exist in K.
template <class K>
bool solve_lift(const Matrix<K>& b, unsigned d, const std::vector<int>& sigma, std::vector<K>& D) {
  const std::size_t n = b.size();
  std::vector<bool> done(n, false);
  D.assign(n, Ring<K>::one());
  auto entry = [&](std::size_t i) { return b(i, static_cast<std::size_t>(sigma[i])); };
  // Periodic cycles first.
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t j = start;
    for (std::size_t s = 0; s < n; ++s) j = static_cast<std::size_t>(sigma[j]);
    if (done[j]) continue;
    std::vector<std::size_t> cyc{j};
    for (std::size_t x = static_cast<std::size_t>(sigma[j]); x != j;
         x = static_cast<std::size_t>(sigma[x]))
      cyc.push_back(x);
    const std::size_t m = cyc.size();
    Integer dm = 1;
    for (std::size_t k = 0; k < m; ++k) dm *= d;
    K rhs = Ring<K>::one();
    Integer e = dm / d;  // d^{m-1-k}
    for (std::size_t k = 0; k < m; ++k, e /= d) rhs *= power(entry(cyc[k]), e);
    K dj;
    if (!root(rhs, Integer(dm - 1), dj)) return false;
    D[j] = dj;
    done[j] = true;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      D[cyc[k + 1]] = power(D[cyc[k]], Integer(d)) / entry(cyc[k]);
      done[cyc[k + 1]] = true;
    }
  }
  // Tails: D_i^d = B_{i,sigma(i)} D_{sigma(i)}.
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t s = static_cast<std::size_t>(sigma[i]);
      if (done[i] || !done[s]) continue;
      K di;
      if (!root(K(entry(i) * D[s]), Integer(d), di)) return false;
      D[i] = di;
      done[i] = true;
      progress = true;
    }
  }
  return true;
}

template <class K>
Matrix<K> lifted(const Matrix<K>& b, const std::vector<K>& D, unsigned d) {
  Matrix<K> out = b;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out(i, j) = b(i, j) * D[j] / power(D[i], Integer(d));
  return out;
}

template <class K>
bool rows_contain_one(const Matrix<K>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < b.size(); ++j) any = any || is_one(b(i, j));
    if (!any) return false;
  }
  return true;
}

template <class K>
void check_sigma(const Matrix<K>& b, std::vector<int>& sigma) {
  if (sigma.empty()) sigma = default_sigma(b);
  if (sigma.size() != b.size()) fail(ErrorKind::Domain, "sigma has the wrong size");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (sigma[i] < 0 || sigma[i] >= static_cast<int>(b.size()) ||
        Ring<K>::is_zero(b(i, static_cast<std::size_t>(sigma[i]))))
      fail(ErrorKind::Domain, "sigma picks a zero entry");
}

template <class K>
Real log_row_norm(const Matrix<K>& b, std::size_t i, const Place& v) {
  Real best = 0;
  bool first = true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (Ring<K>::is_zero(b(i, j))) continue;
    Real x = log_abs(b(i, j), v);
    if (first || x > best) best = x;
    first = false;
  }
  return best;
}

template <class K>
GoodRepCheck inequality(const Matrix<K>& a, const Place& v) {
  const int N = static_cast<int>(a.size()) - 1;
  Matrix<K> b = inverse(a);
  K det = determinant(a);
  K m10 = minor(a, 1, 0);
  if (Ring<K>::is_zero(m10)) fail(ErrorKind::Domain, "minor M_{1,0} vanishes");
  GoodRepCheck c;
  c.place = v;
  c.lhs = matrix_norm(a, v) + N * N * log_abs(m10, v);
  Real rows = 0;
  for (std::size_t i = 0; i < a.size(); ++i) rows += log_row_norm(b, i, v);
  c.rhs = N * rows + (1 + N * N) * log_abs(det, v) + log_plus_int(factorial_int(N), v);
  return c;
}

}  // namespace

bool is_normalized(const RatMatrix& a) { return rows_contain_one(inverse(a)); }
bool is_normalized(const Matrix<Complex>& a) { return rows_contain_one(inverse(a)); }

NormalizedLift normalized_lift(const Matrix<Complex>& b, unsigned d, std::vector<int> sigma) {
  if (is_singular(b)) fail(ErrorKind::Domain, "matrix is singular");
  check_sigma(b, sigma);
  NormalizedLift out;
  out.sigma = sigma;
  std::vector<Complex> D;
  solve_lift(b, d, sigma, D);
  out.Dc = GElement<Complex>::diagonal(D).matrix();
  if (!rows_contain_one(lifted(b, D, d)))
    fail(ErrorKind::Domain, "normalized lift failed to verify");
  return out;
}

NormalizedLift normalized_lift(const RatMatrix& b, unsigned d, std::vector<int> sigma) {
  if (is_singular(b)) fail(ErrorKind::Domain, "matrix is singular");
  check_sigma(b, sigma);
  std::vector<Rational> D;
  if (!solve_lift(b, d, sigma, D)) return normalized_lift(to_complex(b), d, sigma);
  NormalizedLift out;
  out.exact = true;
  out.sigma = sigma;
  out.D = GElement<Rational>::diagonal(D).matrix();
  out.Dc = to_complex(out.D);
  Matrix<Rational> l = lifted(b, D, d);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (l(i, static_cast<std::size_t>(sigma[i])) != 1)
      fail(ErrorKind::Domain, "normalized lift failed to verify");
  return out;
}

namespace {

template <class K>
std::vector<K> diagonal_of(const Matrix<K>& m) {
  std::vector<K> out;
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m(i, i));
  return out;
}

}  // namespace

NormalizedOrbit normalize(const RatMatrix& a, unsigned d) {
  NormalizedOrbit out;
  out.lift = normalized_lift(inverse(a), d);
  out.exact = out.lift.exact;
  if (out.exact) {
    out.A = g_action(GElement<Rational>::diagonal(diagonal_of(out.lift.D)), a, d);
    out.Ac = to_complex(out.A);
  } else {
    out.Ac = g_action(GElement<Complex>::diagonal(diagonal_of(out.lift.Dc)), to_complex(a), d);
  }
  return out;
}

std::vector<Place> goodrep_places(const RatMatrix& a) {
  std::vector<unsigned long> primes{2, 3, 5};
  auto add = [&](const Rational& q) {
    if (q == 0) return;
    auto s = support_primes(q);
    primes.insert(primes.end(), s.begin(), s.end());
  };
  for (const auto& x : a.data()) add(x);
  RatMatrix b = inverse(a);
  for (const auto& x : b.data()) add(x);
  add(determinant(a));
  add(minor(a, 1, 0));
  add(Rational(factorial_int(static_cast<int>(a.size()) - 1)));
  return places_from_primes(primes);
}

GoodRepCheck goodrep_inequality(const RatMatrix& a, const Place& v) { return inequality(a, v); }
GoodRepCheck goodrep_inequality(const Matrix<Complex>& a) {
  return inequality(a, Place::archimedean());
}

bool GoodRep::holds() const {
  return std::all_of(checks.begin(), checks.end(), [](const GoodRepCheck& c) { return c.holds(); });
}

GoodRep goodrep(const RatMatrix& a, unsigned d) {
  const std::size_t n = a.size();
  if (is_singular(a)) fail(ErrorKind::Domain, "matrix is singular");
  bool diagonal = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) diagonal = diagonal && (i == j || a(i, j) == 0);
  if (diagonal) fail(ErrorKind::Precondition, "goodrep: diagonal matrix lies in the identity orbit");
  RatMatrix b = inverse(a);
  // Make sure sigma scales some off-diagonal entry to 1.
  std::vector<int> sigma = default_sigma(b);
  std::size_t I = n;
  for (std::size_t i = 0; i < n && I == n; ++i)
    if (sigma[i] != static_cast<int>(i)) I = i;
  if (I == n) {
    for (std::size_t i = 0; i < n && I == n; ++i) {
      int best = -1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || b(i, j) == 0) continue;
        if (best < 0 || abs(b(i, j)) > abs(b(i, static_cast<std::size_t>(best))))
          best = static_cast<int>(j);
      }
      if (best >= 0) {
        sigma[i] = best;
        I = i;
      }
    }
  }
  const std::size_t J = static_cast<std::size_t>(sigma[I]);
  NormalizedLift lift = normalized_lift(b, d, sigma);
  // Permutation moving (I, J) to (0, 1).
  std::vector<int> perm{static_cast<int>(I), static_cast<int>(J)};
  for (std::size_t i = 0; i < n; ++i)
    if (i != I && i != J) perm.push_back(static_cast<int>(i));

  GoodRep out;
  out.exact = lift.exact;
  out.g = GElement<Complex>::diagonal(diagonal_of(lift.Dc)).then(GElement<Complex>::permutation(perm));
  if (lift.exact) {
    auto g = GElement<Rational>::diagonal(diagonal_of(lift.D)).then(GElement<Rational>::permutation(perm));
    out.A = g_action(g, a, d);
    out.Ac = to_complex(out.A);
    if (inverse(out.A)(0, 1) != 1) fail(ErrorKind::Domain, "goodrep failed to place a 1 at (0,1)");
    for (const auto& v : goodrep_places(out.A)) out.checks.push_back(inequality(out.A, v));
  } else {
    out.Ac = g_action(out.g, to_complex(a), d);
    if (!is_one(inverse(out.Ac)(0, 1))) fail(ErrorKind::Domain, "goodrep failed to place a 1 at (0,1)");
    out.checks.push_back(inequality(out.Ac, Place::archimedean()));
  }
  return out;
}

std::vector<Form<Rational>> conjugate_map(const std::vector<Form<Rational>>& f, const RatMatrix& b) {
  if (f.size() != b.size()) fail(ErrorKind::Domain, "dimension mismatch");
  std::vector<Form<Rational>> fb;
  for (const auto& c : f) fb.push_back(linear_pullback(c, b));
  RatMatrix binv = inverse(b);
  std::vector<Form<Rational>> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Form<Rational> h(f[0].nvars(), f[0].degree());
    for (std::size_t k = 0; k < f.size(); ++k)
      if (binv(i, k) != 0) h += fb[k].scaled(binv(i, k));
    out.push_back(h);
  }
  return out;
}

Monomialized monomialize(const std::vector<Form<Rational>>& f) {
  const std::size_t n = f.size();
  if (n < 2 || n > 4) fail(ErrorKind::Precondition, "map needs 2 to 4 components");
  const unsigned d = f[0].degree();
  const int N = static_cast<int>(n) - 1;
  std::vector<Form<Rational>> ls = critical_linear_factors(f);
  if (ls.size() != n) fail(ErrorKind::NotMinimallyCritical, "wrong number of critical hyperplanes");
  RatMatrix dl(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      row[j] = ls[i].coeff(mono_unit(static_cast<int>(j)));
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] != 0 && (best == n || abs(row[j]) > abs(row[best]))) best = j;
    if (best == n) fail(ErrorKind::Domain, "zero critical form");
    for (std::size_t j = 0; j < n; ++j) dl(i, j) = row[j] / row[best];
  }
  if (is_singular(dl)) fail(ErrorKind::NotMinimallyCritical, "critical hyperplanes meet improperly");
  Monomialized out;
  out.B = inverse(dl);
  // F(BX) = C X^d, then A = B^{-1} C.
  RatMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Form<Rational> g = linear_pullback(f[i], out.B);
    for (const auto& [m, x] : g.terms()) {
      int hit = -1;
      for (std::size_t j = 0; j < n; ++j)
        if (mono_exp(m, static_cast<int>(j)) == d) hit = static_cast<int>(j);
      if (hit < 0) fail(ErrorKind::NotMinimallyCritical, "conjugate is not of the form AX^d");
      c(i, static_cast<std::size_t>(hit)) = x;
    }
  }
  out.A = inverse(out.B) * c;
  if (is_singular(out.A)) fail(ErrorKind::NotMinimallyCritical, "conjugate is degenerate");

  bool monomial = true;
  for (std::size_t i = 0; i < n && monomial; ++i)
    for (const auto& t : f[i].terms()) {
      bool pure = false;
      for (std::size_t j = 0; j < n; ++j) pure = pure || mono_exp(t.first, static_cast<int>(j)) == d;
      monomial = monomial && pure;
    }
  if (N == 1 || monomial) {
    const Real l2 = real_log2();
    out.bound_checked = true;
    out.h_pgl_b = h_pgl(out.B).total;
    out.bound = (N + 1) * h_hom(f).total + log(real_from(factorial_int(N))) +
                (N + 1) * log(real_from(Integer(d))) + log(real_from(factorial_int(N + 1))) +
                2 * N * (N + 1) * (static_cast<int>(d) - 1) * l2;
  }
  return out;
}

}  // namespace mincrit
