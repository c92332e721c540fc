#include "mincrit/transport.hpp"

#include <random>

namespace mincrit {

namespace {

using QF = Form<Rational>;

// R restricted to the line u P + w Q, as a binary form in (u, w).
QF restrict_to_line(const QF& r, const std::vector<Rational>& p, const std::vector<Rational>& q) {
  std::vector<QF> ell;
  for (std::size_t i = 0; i < p.size(); ++i)
    ell.push_back(QF::variable(2, 0).scaled(p[i]) + QF::variable(2, 1).scaled(q[i]));
  QF out(2, r.degree());
  for (const auto& [m, c] : r.terms()) {
    QF t = QF::constant(2, c);
    for (int i = 0; i < r.nvars(); ++i) t = t * ell[static_cast<std::size_t>(i)].pow(mono_exp(m, i));
    out += t;
  }
  return out;
}

// Rational roots [u : w] of a binary form.
std::vector<std::pair<Rational, Rational>> rational_roots(const QF& b) {
  std::vector<std::pair<Rational, Rational>> out;
  unsigned deg = b.degree();
  std::vector<Rational> c(deg + 1, Rational(0));  // coefficient of u^k w^{deg-k}
  for (const auto& [m, v] : b.terms()) c[mono_exp(m, 0)] = v;
  // Root at w = 0 when the u^deg coefficient vanishes.
  std::size_t top = deg;
  while (top > 0 && c[top] == 0) --top;
  if (top < deg) out.emplace_back(Rational(1), Rational(0));
  if (top == 0) return out;
  std::vector<Complex> cc;
  for (std::size_t k = 0; k <= top; ++k) cc.emplace_back(c[k]);
  Real scale = 0;
  for (const auto& z : polynomial_roots(cc)) {
    scale = 1 + abs(z.re);
    if (abs(z.im) > scale * Real(1e-20)) continue;
    Rational u = rationalize(z.re, Integer("1000000000000000"));
    Rational val = 0;
    for (std::size_t k = top + 1; k-- > 0;) val = val * u + c[k];
    if (val == 0) {
      bool dup = false;
      for (const auto& [a, w] : out)
        if (w == 1 && a == u) dup = true;
      if (!dup) out.emplace_back(u, Rational(1));
    }
  }
  return out;
}

}  // namespace

std::vector<Form<Rational>> critical_linear_factors(const std::vector<Form<Rational>>& f,
                                                    std::uint64_t seed) {
  const int n = static_cast<int>(f.size());
  QF jac = jacobian_form(f);
  if (jac.is_zero()) fail(ErrorKind::NotMinimallyCritical, "not-minimally-critical: degenerate Jacobian");
  const unsigned d = f[0].degree();
  QF r = squarefree_part(jac);
  if (static_cast<int>(r.degree()) != n)
    fail(ErrorKind::NotMinimallyCritical,
         "not-minimally-critical: critical locus has degree " + std::to_string(r.degree()));
  if (!(normalize_projective(jac) == normalize_projective(r.pow(d - 1))))
    fail(ErrorKind::NotMinimallyCritical, "not-minimally-critical: ramification multiplicities differ from d-1");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-10, 10);
  std::vector<QF> found;
  QF rest = r;
  for (int attempt = 0; attempt < 20 && rest.degree() > 0; ++attempt) {
    std::vector<Rational> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)] = coord(rng);
      q[static_cast<std::size_t>(i)] = coord(rng);
    }
    QF b = restrict_to_line(rest, p, q);
    if (b.is_zero()) continue;
    for (const auto& [u, w] : rational_roots(b)) {
      std::vector<Rational> x(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = u * p[i] + w * q[i];
      std::vector<Rational> grad;
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        grad.push_back(rest.derivative(i).evaluate(x));
        if (grad.back() != 0) nonzero = true;
      }
      if (!nonzero) continue;
      QF ell = normalize_projective(linear_form(grad));
      auto quo = form_divide(rest, ell);
      if (!quo) continue;
      found.push_back(ell);
      rest = *quo;
      if (rest.degree() == 0) break;
    }
  }
  if (rest.degree() > 0)
    fail(ErrorKind::IrrationalCriticalLocus,
         "irrational-critical-locus: only " + std::to_string(found.size()) + " rational critical hyperplanes");
  RatMatrix l(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      l(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = found[static_cast<std::size_t>(i)].coeff(mono_unit(j));
  if (is_singular(l))
    fail(ErrorKind::NotMinimallyCritical, "not-minimally-critical: critical hyperplanes do not meet properly");
  return found;
}

}  // namespace mincrit
