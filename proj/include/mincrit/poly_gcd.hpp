#pragma once

// Recursive dense polynomials over an exact field, gcds and squarefree parts
// of homogeneous forms.
//
// RPoly at level L >= 1 is a polynomial in x_L whose coefficients are RPolys
// of level L-1; level 0 is a constant. Level-1 gcds use monic Euclid, higher
// levels primitive pseudo-remainder sequences with content splitting.

#include <functional>
#include <optional>

#include "mincrit/form.hpp"

namespace mincrit {

template <class K>
struct RPoly {
  int level = 0;
  K c = Ring<K>::zero();   // level 0
  std::vector<RPoly> co;   // level >= 1, no trailing zeros

  static RPoly constant(int level, const K& v) {
    RPoly p;
    p.level = level;
    if (level == 0) {
      p.c = v;
    } else if (!Ring<K>::is_zero(v)) {
      p.co.push_back(constant(level - 1, v));
    }
    return p;
  }
  static RPoly zero(int level) { return constant(level, Ring<K>::zero()); }

  bool is_zero() const { return level == 0 ? Ring<K>::is_zero(c) : co.empty(); }
  int deg() const { return level == 0 ? 0 : static_cast<int>(co.size()) - 1; }
  const RPoly& lc() const { return co.back(); }
  // Constant in every variable.
  bool is_constant() const {
    if (level == 0) return true;
    return co.size() <= 1 && (co.empty() || co[0].is_constant());
  }
  // Leading coefficient at the bottom level.
  const K& base_lc() const { return level == 0 ? c : co.back().base_lc(); }

  void trim() {
    while (!co.empty() && co.back().is_zero()) co.pop_back();
  }

  friend bool operator==(const RPoly& a, const RPoly& b) {
    if (a.level == 0) return a.c == b.c;
    return a.co == b.co;
  }

  RPoly& operator+=(const RPoly& o) {
    if (level == 0) {
      c += o.c;
      return *this;
    }
    if (co.size() < o.co.size()) co.resize(o.co.size(), zero(level - 1));
    for (std::size_t i = 0; i < o.co.size(); ++i) co[i] += o.co[i];
    trim();
    return *this;
  }
  RPoly operator-() const {
    RPoly r = *this;
    if (level == 0) {
      r.c = -r.c;
    } else {
      for (auto& x : r.co) x = -x;
    }
    return r;
  }
  RPoly& operator-=(const RPoly& o) { return *this += -o; }
  friend RPoly operator+(RPoly a, const RPoly& b) { return a += b; }
  friend RPoly operator-(RPoly a, const RPoly& b) { return a -= b; }
  friend RPoly operator*(const RPoly& a, const RPoly& b) {
    if (a.level == 0) {
      RPoly r;
      r.c = a.c * b.c;
      return r;
    }
    RPoly r = zero(a.level);
    if (a.is_zero() || b.is_zero()) return r;
    r.co.assign(a.co.size() + b.co.size() - 1, zero(a.level - 1));
    for (std::size_t i = 0; i < a.co.size(); ++i) {
      if (a.co[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.co.size(); ++j) {
        if (b.co[j].is_zero()) continue;
        r.co[i + j] += a.co[i] * b.co[j];
      }
    }
    r.trim();
    return r;
  }
  RPoly scaled(const K& v) const {
    if (level == 0) {
      RPoly r;
      r.c = c * v;
      return r;
    }
    RPoly r = *this;
    for (auto& x : r.co) x = x.scaled(v);
    r.trim();
    return r;
  }
  // Multiply by x_level^k.
  RPoly shifted(int k) const {
    RPoly r = *this;
    if (is_zero()) return r;
    r.co.insert(r.co.begin(), static_cast<std::size_t>(k), zero(level - 1));
    return r;
  }
  // Multiply every coefficient (in the main variable) by q of level-1.
  RPoly times_coeff(const RPoly& q) const {
    RPoly r = *this;
    for (auto& x : r.co) x = x * q;
    r.trim();
    return r;
  }

  // d/dx_target for target <= level.
  RPoly derivative(int target) const {
    if (level == 0) return zero(0);
    RPoly r = zero(level);
    if (target == level) {
      for (std::size_t i = 1; i < co.size(); ++i) r.co.push_back(co[i].scaled(K(static_cast<long>(i))));
    } else {
      for (const auto& x : co) r.co.push_back(x.derivative(target));
    }
    r.trim();
    return r;
  }
};

template <class K>
RPoly<K> make_monic(const RPoly<K>& p) {
  if (p.is_zero()) return p;
  return p.scaled(Ring<K>::inv(p.base_lc()));
}

// Exact quotient a / b; throws if b does not divide a.
template <class K>
RPoly<K> exact_div(RPoly<K> a, const RPoly<K>& b) {
  if (b.is_zero()) fail(ErrorKind::Domain, "division by zero polynomial");
  if (a.level == 0) {
    RPoly<K> r;
    r.c = a.c * Ring<K>::inv(b.c);
    return r;
  }
  RPoly<K> q = RPoly<K>::zero(a.level);
  while (!a.is_zero() && a.deg() >= b.deg()) {
    int k = a.deg() - b.deg();
    RPoly<K> t = exact_div(a.lc(), b.lc());
    if (q.co.size() < static_cast<std::size_t>(k + 1)) q.co.resize(static_cast<std::size_t>(k + 1), RPoly<K>::zero(a.level - 1));
    q.co[static_cast<std::size_t>(k)] = t;
    a -= b.times_coeff(t).shifted(k);
  }
  if (!a.is_zero()) fail(ErrorKind::Domain, "polynomial division is not exact");
  q.trim();
  return q;
}

template <class K>
RPoly<K> poly_gcd(const RPoly<K>& a, const RPoly<K>& b);

template <class K>
RPoly<K> content(const RPoly<K>& p) {
  RPoly<K> g = RPoly<K>::zero(p.level - 1);
  for (const auto& x : p.co) {
    if (x.is_zero()) continue;
    g = poly_gcd(g, x);
    if (g.is_constant()) return make_monic(g);
  }
  return g;
}

template <class K>
RPoly<K> primitive_part(const RPoly<K>& p) {
  if (p.is_zero()) return p;
  RPoly<K> c = content(p);
  RPoly<K> r = RPoly<K>::zero(p.level);
  for (const auto& x : p.co) r.co.push_back(exact_div(x, c));
  r.trim();
  return r;
}

// lc(b)^k a mod b
template <class K>
RPoly<K> pseudo_rem(RPoly<K> a, const RPoly<K>& b) {
  while (!a.is_zero() && a.deg() >= b.deg()) {
    int k = a.deg() - b.deg();
    RPoly<K> la = a.lc();
    a = a.times_coeff(b.lc()) - b.times_coeff(la).shifted(k);
  }
  return a;
}

// Monic (bottom-level leading coefficient 1) gcd.
template <class K>
RPoly<K> poly_gcd(const RPoly<K>& a, const RPoly<K>& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.level == 0) return RPoly<K>::constant(0, Ring<K>::one());
  if (a.level == 1) {
    RPoly<K> x = make_monic(a), y = make_monic(b);
    if (x.deg() < y.deg()) std::swap(x, y);
    while (!y.is_zero()) {
      RPoly<K> r = x;
      while (!r.is_zero() && r.deg() >= y.deg()) {
        int k = r.deg() - y.deg();
        r -= y.scaled(r.lc().c).shifted(k);
      }
      x = std::move(y);
      y = make_monic(r);
    }
    return make_monic(x);
  }
  RPoly<K> ca = content(a), cb = content(b);
  RPoly<K> c = poly_gcd(ca, cb);
  RPoly<K> x = primitive_part(a), y = primitive_part(b);
  if (x.deg() < y.deg()) std::swap(x, y);
  while (!y.is_zero() && y.deg() > 0) {
    RPoly<K> r = pseudo_rem(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  RPoly<K> g = y.is_zero() ? x : RPoly<K>::constant(a.level, Ring<K>::one());
  g = primitive_part(g);
  RPoly<K> out = RPoly<K>::zero(a.level);
  for (const auto& t : g.co) out.co.push_back(t * c);
  out.trim();
  return make_monic(out);
}

// Dehomogenise at X_0 = 1; level N polynomial in X_1..X_N.
template <class K>
RPoly<K> dehomogenize(const Form<K>& f) {
  const int n = f.nvars() - 1;
  RPoly<K> out = RPoly<K>::zero(n);
  for (const auto& [m, c] : f.terms()) {
    RPoly<K>* node = &out;
    for (int lvl = n; lvl >= 1; --lvl) {
      std::size_t e = mono_exp(m, lvl);
      if (node->co.size() <= e) node->co.resize(e + 1, RPoly<K>::zero(lvl - 1));
      node = &node->co[e];
    }
    node->c += c;
  }
  // Remove zero tails at every level.
  std::function<void(RPoly<K>&)> clean = [&](RPoly<K>& p) {
    if (p.level == 0) return;
    for (auto& x : p.co) clean(x);
    p.trim();
  };
  clean(out);
  return out;
}

template <class K>
Form<K> homogenize(const RPoly<K>& p, int nvars) {
  std::vector<std::pair<Monomial, K>> terms;
  std::function<void(const RPoly<K>&, Monomial)> walk = [&](const RPoly<K>& q, Monomial m) {
    if (q.level == 0) {
      if (!Ring<K>::is_zero(q.c)) terms.emplace_back(m, q.c);
      return;
    }
    for (std::size_t e = 0; e < q.co.size(); ++e)
      walk(q.co[e], m + Monomial(e) * mono_unit(q.level));
  };
  walk(p, 0);
  unsigned deg = 0;
  for (const auto& t : terms) deg = std::max(deg, mono_degree(t.first));
  for (auto& t : terms) t.first += Monomial(deg - mono_degree(t.first)) * mono_unit(0);
  return Form<K>(nvars, deg, std::move(terms));
}

// Generator of the radical of (Φ), normalised.
template <class K>
Form<K> squarefree_part(const Form<K>& phi) {
  static_assert(Ring<K>::exact && Ring<K>::field, "squarefree part needs an exact field");
  if (phi.is_zero()) fail(ErrorKind::Domain, "squarefree part of zero");
  const int n = phi.nvars();
  unsigned e0 = ~0u;
  for (const auto& t : phi.terms()) e0 = std::min(e0, mono_exp(t.first, 0));
  RPoly<K> f = dehomogenize(phi);
  Form<K> out;
  if (f.is_constant()) {
    out = Form<K>::constant(n, Ring<K>::one());
  } else {
    RPoly<K> g = f;
    for (int lvl = 1; lvl < n && !g.is_constant(); ++lvl) g = poly_gcd(g, f.derivative(lvl));
    out = homogenize(exact_div(f, g), n);
  }
  if (e0 > 0) out = out * Form<K>::variable(n, 0);
  return normalize_projective(out);
}

// gcd of two forms (normalised), via the same machinery.
template <class K>
Form<K> form_gcd(const Form<K>& a, const Form<K>& b) {
  const int n = a.nvars();
  unsigned ea = ~0u, eb = ~0u;
  for (const auto& t : a.terms()) ea = std::min(ea, mono_exp(t.first, 0));
  for (const auto& t : b.terms()) eb = std::min(eb, mono_exp(t.first, 0));
  Form<K> g = homogenize(poly_gcd(dehomogenize(a), dehomogenize(b)), n);
  unsigned e = std::min(ea, eb);
  if (e > 0) g = g * Form<K>::variable(n, 0).pow(e);
  return normalize_projective(g);
}

// a / b when b divides a exactly.
template <class K>
std::optional<Form<K>> form_divide(const Form<K>& a, const Form<K>& b) {
  if (b.is_zero()) fail(ErrorKind::Domain, "division by the zero form");
  if (a.is_zero()) return Form<K>(a.nvars(), a.degree() >= b.degree() ? a.degree() - b.degree() : 0);
  if (b.degree() > a.degree()) return std::nullopt;
  const int n = a.nvars();
  unsigned ea = ~0u, eb = ~0u;
  for (const auto& t : a.terms()) ea = std::min(ea, mono_exp(t.first, 0));
  for (const auto& t : b.terms()) eb = std::min(eb, mono_exp(t.first, 0));
  if (eb > ea) return std::nullopt;
  RPoly<K> q;
  try {
    q = exact_div(dehomogenize(a), dehomogenize(b));
  } catch (const Error&) {
    return std::nullopt;
  }
  Form<K> out = homogenize(q, n);
  unsigned want = a.degree() - b.degree();
  if (out.degree() > want) return std::nullopt;
  if (out.degree() < want) out = out * Form<K>::variable(n, 0).pow(want - out.degree());
  return out;
}

}  // namespace mincrit
