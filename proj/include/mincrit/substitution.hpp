#pragma once

// Kernels for Φ(CX) with C linear and for the power-map pushforward.
//
// Φ(CX) is evaluated through a full-pivot factorisation
//   C = Pr^{-1} L (Dg U) Pc^{-1}
// so that the substitution becomes a sequence of permutations, shears
// X_i -> X_i + t X_j (Taylor shifts) and scalings X_i -> g X_i. The
// factorisation is computed in a field K0 and its scalars are then mapped
// into the coefficient ring of the form (for example p-adic integers).

#include <functional>
#include <map>

#include "mincrit/form.hpp"
#include "mincrit/matrix.hpp"

namespace mincrit {

template <class K>
struct SubstOp {
  enum Kind { Permute, Shear, Scale } kind;
  std::vector<int> perm;  // Permute: X_i -> X_{perm[i]}
  int i = 0, j = 0;       // Shear: X_i -> X_i + t X_j ; Scale: X_i -> t X_i
  K t;
};

template <class K>
using SubstPlan = std::vector<SubstOp<K>>;

// Factor C (invertible) into substitution steps. `better(a, b)` picks pivots.
template <class K0>
SubstPlan<K0> plan_substitution(
    const Matrix<K0>& c,
    std::function<bool(const K0&, const K0&)> better = Ring<K0>::better_pivot) {
  const std::size_t n = c.size();
  Matrix<K0> m = c;
  std::vector<int> rowp(n), colp(n);
  for (std::size_t i = 0; i < n; ++i) rowp[i] = colp[i] = static_cast<int>(i);
  Matrix<K0> low = Matrix<K0>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t s = k; s < n; ++s)
        if (better(m(r, s), m(pr, pc))) {
          pr = r;
          pc = s;
        }
    if (Ring<K0>::is_zero(m(pr, pc))) fail(ErrorKind::Domain, "singular substitution matrix");
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pr, j), m(k, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(low(pr, j), low(k, j));
      std::swap(rowp[pr], rowp[k]);
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(m(i, pc), m(i, k));
      std::swap(colp[pc], colp[k]);
    }
    K0 inv = Ring<K0>::inv(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (Ring<K0>::is_zero(m(r, k))) continue;
      K0 f = m(r, k) * inv;
      low(r, k) = f;
      for (std::size_t j = k; j < n; ++j) m(r, j) -= f * m(k, j);
    }
  }
  // Now (rows permuted by rowp, columns by colp) C = low * m.
  SubstPlan<K0> plan;
  {
    SubstOp<K0> op{SubstOp<K0>::Permute, std::vector<int>(n), 0, 0, Ring<K0>::zero()};
    for (std::size_t i = 0; i < n; ++i) op.perm[static_cast<std::size_t>(rowp[i])] = static_cast<int>(i);
    plan.push_back(op);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i)
      if (!Ring<K0>::is_zero(low(i, j)))
        plan.push_back({SubstOp<K0>::Shear, {}, static_cast<int>(i), static_cast<int>(j), low(i, j)});
  for (std::size_t i = 0; i < n; ++i)
    plan.push_back({SubstOp<K0>::Scale, {}, static_cast<int>(i), 0, m(i, i)});
  for (std::size_t j = n; j-- > 1;) {
    for (std::size_t i = 0; i < j; ++i) {
      if (Ring<K0>::is_zero(m(i, j))) continue;
      plan.push_back({SubstOp<K0>::Shear, {}, static_cast<int>(i), static_cast<int>(j),
                      K0(m(i, j) * Ring<K0>::inv(m(i, i)))});
    }
  }
  {
    SubstOp<K0> op{SubstOp<K0>::Permute, std::vector<int>(n), 0, 0, Ring<K0>::zero()};
    for (std::size_t j = 0; j < n; ++j) op.perm[j] = colp[j];
    plan.push_back(op);
  }
  return plan;
}

template <class K, class K0, class F>
SubstPlan<K> map_plan(const SubstPlan<K0>& plan, F f) {
  SubstPlan<K> out;
  for (const auto& op : plan)
    out.push_back({static_cast<typename SubstOp<K>::Kind>(op.kind), op.perm, op.i, op.j, f(op.t)});
  return out;
}

namespace detail {

template <class K>
Form<K> apply_permute(const Form<K>& f, const std::vector<int>& perm) {
  // Substituting X_i -> X_{perm[i]} sends X^e to prod X_{perm[i]}^{e_i}.
  std::vector<typename Form<K>::Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial nm = 0;
    for (int i = 0; i < f.nvars(); ++i)
      nm += Monomial(mono_exp(m, i)) * mono_unit(perm[static_cast<std::size_t>(i)]);
    out.emplace_back(nm, c);
  }
  return Form<K>(f.nvars(), f.degree(), std::move(out));
}

template <class K>
Form<K> apply_scale(const Form<K>& f, int i, const K& g) {
  std::vector<K> powers{Ring<K>::one()};
  std::vector<typename Form<K>::Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    unsigned e = mono_exp(m, i);
    while (powers.size() <= e) powers.push_back(powers.back() * g);
    out.emplace_back(m, c * powers[e]);
  }
  return Form<K>(f.nvars(), f.degree(), std::move(out));
}

// X_i -> X_i + t X_j via a Taylor shift on each group of terms that agree
// outside X_i, X_j.
template <class K>
Form<K> apply_shear(const Form<K>& f, int i, int j, const K& t) {
  std::map<Monomial, std::vector<K>> groups;
  for (const auto& [m, c] : f.terms()) {
    Monomial key = mono_with(mono_with(m, i, 0), j, 0);
    unsigned s = f.degree() - mono_degree(key);
    auto& a = groups[key];
    if (a.empty()) a.assign(s + 1, Ring<K>::zero());
    a[mono_exp(m, i)] = c;
  }
  std::vector<typename Form<K>::Term> out;
  for (auto& [key, a] : groups) {
    const std::size_t s = a.size() - 1;
    // p(y) = sum a_m y^m  ->  p(y + t)
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t m = s; m-- > k;) {
        if (Ring<K>::is_zero(a[m + 1])) continue;
        a[m] += t * a[m + 1];
      }
    for (std::size_t m = 0; m <= s; ++m) {
      if (Ring<K>::is_zero(a[m])) continue;
      Monomial nm = key + Monomial(m) * mono_unit(i) + Monomial(s - m) * mono_unit(j);
      out.emplace_back(nm, std::move(a[m]));
    }
  }
  return Form<K>(f.nvars(), f.degree(), std::move(out));
}

}  // namespace detail

template <class K>
Form<K> apply_plan(Form<K> f, const SubstPlan<K>& plan) {
  for (const auto& op : plan) {
    switch (op.kind) {
      case SubstOp<K>::Permute: f = detail::apply_permute(f, op.perm); break;
      case SubstOp<K>::Shear: f = detail::apply_shear(f, op.i, op.j, op.t); break;
      case SubstOp<K>::Scale: f = detail::apply_scale(f, op.i, op.t); break;
    }
  }
  return f;
}

// Φ(CX) by direct expansion; slow, used as a test oracle.
template <class K>
Form<K> substitute_direct(const Form<K>& f, const Matrix<K>& c) {
  const int n = f.nvars();
  std::vector<Form<K>> rows;
  for (int i = 0; i < n; ++i) {
    Form<K> r(n, 1);
    for (int j = 0; j < n; ++j)
      r += Form<K>::variable(n, j).scaled(c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    rows.push_back(r);
  }
  Form<K> out(n, f.degree());
  for (const auto& [m, coef] : f.terms()) {
    Form<K> t = Form<K>::constant(n, coef);
    for (int i = 0; i < n; ++i) t = t * rows[static_cast<std::size_t>(i)].pow(mono_exp(m, i));
    out += t;
  }
  return out;
}

// prod over zeta in mu_q of Ψ(.., zeta X_i, ..), where the exponents of X_i
// in Ψ are all multiples of `stride`. Division-free.
template <class K>
Form<K> norm_in_variable(const Form<K>& psi, int i, unsigned q, unsigned stride) {
  const int n = psi.nvars();
  std::vector<Form<K>> c(q, Form<K>(n, psi.degree()));
  {
    std::vector<std::vector<typename Form<K>::Term>> parts(q);
    for (const auto& t : psi.terms()) {
      unsigned e = mono_exp(t.first, i);
      if (e % stride != 0) {
        // Inexact rings leave rounding residue where exact cancellation is due.
        if (!Ring<K>::exact) continue;
        fail(ErrorKind::Domain, "stride violated in pushforward");
      }
      parts[(e / stride) % q].push_back(t);
    }
    for (unsigned r = 0; r < q; ++r) c[r] = Form<K>(n, psi.degree(), std::move(parts[r]));
  }
  if (q == 2) return (c[0] + c[1]) * (c[0] - c[1]);
  if (q == 3) {
    Form<K> s = c[0] + c[1] + c[2];
    Form<K> quad = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - c[0] * c[1] - c[1] * c[2] - c[0] * c[2];
    return s * quad;
  }
  // Product of the q-1 Galois conjugates in R[t]/(t^q - 1); the result is
  // the scalar e_0 - e_{q-1} modulo the cyclotomic polynomial.
  std::vector<Form<K>> acc(q, Form<K>(n, 0));
  acc[0] = Form<K>::constant(n, Ring<K>::one());
  for (unsigned j = 1; j < q; ++j) {
    std::vector<Form<K>> next(q, Form<K>(n, acc[0].degree() + psi.degree()));
    for (unsigned a = 0; a < q; ++a) {
      if (acc[a].is_zero()) continue;
      for (unsigned r = 0; r < q; ++r) {
        if (c[r].is_zero()) continue;
        next[(a + j * r) % q] += acc[a] * c[r];
      }
    }
    acc = std::move(next);
  }
  Form<K> conj = acc[0] - acc[q - 1];
  return conj * psi;
}

inline std::vector<unsigned> prime_factors_with_multiplicity(unsigned d) {
  std::vector<unsigned> out;
  for (unsigned p = 2; d > 1; ++p)
    while (d % p == 0) {
      out.push_back(p);
      d /= p;
    }
  return out;
}

// φ_*Φ for φ(X) = X^d: prod over zeta in mu_d^{N+1} of Φ(zeta X), rewritten
// in Y_i = X_i^d. Degree d^N deg Φ.
template <class K>
Form<K> power_pushforward(const Form<K>& phi, unsigned d) {
  if (d < 1) fail(ErrorKind::Domain, "power map degree must be positive");
  auto primes = prime_factors_with_multiplicity(d);
  Form<K> psi = phi;
  for (int i = 0; i < phi.nvars(); ++i) {
    unsigned stride = 1;
    for (unsigned q : primes) {
      psi = norm_in_variable(psi, i, q, stride);
      stride *= q;
    }
  }
  unsigned deg = psi.degree() / d;
  std::vector<typename Form<K>::Term> terms = psi.terms();
  for (int i = 0; i < phi.nvars(); ++i) terms = divide_exponents(std::move(terms), i, d);
  return Form<K>(phi.nvars(), deg, std::move(terms));
}

}  // namespace mincrit
