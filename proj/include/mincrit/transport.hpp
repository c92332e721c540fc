#pragma once

// Pullbacks and pushforwards for F_A(X) = A X^d:
//   F_A^* = φ^* A^*,  F_{A*} = A_* φ_*,  A_* = (A^{-1})^*.

#include <cstdint>

#include "mincrit/poly_gcd.hpp"
#include "mincrit/substitution.hpp"

namespace mincrit {

template <class K>
struct MapData {
  Matrix<K> A;
  unsigned d = 2;
  int N = 1;

  MapData() = default;
  MapData(Matrix<K> a, unsigned degree) : A(std::move(a)), d(degree) {
    N = static_cast<int>(A.size()) - 1;
    if (N < 1 || N > 3) fail(ErrorKind::Precondition, "N must be 1, 2 or 3");
    if (d < 2) fail(ErrorKind::Precondition, "d must be at least 2");
    if (is_singular(A)) fail(ErrorKind::Domain, "matrix is singular");
  }
  int nvars() const { return N + 1; }
};

// Φ(BX)
template <class K>
Form<K> linear_pullback(const Form<K>& phi, const Matrix<K>& b) {
  if (static_cast<int>(b.size()) != phi.nvars()) fail(ErrorKind::Domain, "dimension mismatch");
  return apply_plan(phi, plan_substitution(b));
}

// B_*Φ = Φ(B^{-1}X)
template <class K>
Form<K> linear_pushforward(const Form<K>& phi, const Matrix<K>& b) {
  return linear_pullback(phi, inverse(b));
}

template <class K>
Form<K> map_pushforward(const Form<K>& phi, const MapData<K>& m) {
  return linear_pushforward(power_pushforward(phi, m.d), m.A);
}

// F_A^*Φ = Φ(A X^d)
template <class K>
Form<K> map_pullback(const Form<K>& phi, const MapData<K>& m) {
  Form<K> a = linear_pullback(phi, m.A);
  std::vector<typename Form<K>::Term> terms;
  for (const auto& [mono, c] : a.terms()) {
    Monomial nm = 0;
    for (int i = 0; i < a.nvars(); ++i) {
      unsigned e = mono_exp(mono, i) * m.d;
      if (e > kMaxExponent) fail(ErrorKind::Budget, "pullback exponent exceeds 16 bits");
      nm += Monomial(e) * mono_unit(i);
    }
    terms.emplace_back(nm, c);
  }
  return Form<K>(a.nvars(), a.degree() * m.d, std::move(terms));
}

// f(V(Φ)): the reduced image hypersurface.
template <class K>
Form<K> image_support(const Form<K>& phi, const MapData<K>& m) {
  return squarefree_part(map_pushforward(phi, m));
}

// Components of F_A: F_i = sum_j A_ij X_j^d.
template <class K>
std::vector<Form<K>> map_components(const MapData<K>& m) {
  std::vector<Form<K>> out;
  const int n = m.nvars();
  for (int i = 0; i < n; ++i) {
    Form<K> f(n, m.d);
    for (int j = 0; j < n; ++j) {
      std::vector<unsigned> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = m.d;
      f += Form<K>::monomial(n, e, m.A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
    out.push_back(f);
  }
  return out;
}

// Evaluate the map F at a point.
template <class K>
std::vector<K> evaluate_map(const std::vector<Form<K>>& f, const std::vector<K>& x) {
  std::vector<K> out;
  for (const auto& c : f) out.push_back(c.evaluate(x));
  return out;
}

namespace detail {
template <class K>
Form<K> form_det(const std::vector<std::vector<Form<K>>>& m, int nvars) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Form<K> out(nvars, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Form<K>>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Form<K>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(row);
    }
    Form<K> t = m[0][j] * form_det(sub, nvars);
    out += (j % 2 == 1) ? -t : t;
  }
  return out;
}
}  // namespace detail

// det(∂F_i/∂X_j); may be the zero form for degenerate systems.
template <class K>
Form<K> jacobian_form(const std::vector<Form<K>>& f) {
  const std::size_t n = f.size();
  if (n == 0 || static_cast<int>(n) != f[0].nvars()) fail(ErrorKind::Domain, "jacobian needs a square system");
  for (const auto& c : f)
    if (c.degree() != f[0].degree() || c.nvars() != f[0].nvars())
      fail(ErrorKind::Domain, "jacobian needs forms of equal degree");
  std::vector<std::vector<Form<K>>> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(f[i].derivative(static_cast<int>(j)));
  return detail::form_det(m, f[0].nvars());
}

// Linear forms L_0..L_N (normalised) with J_F ∝ prod L_i^{d-1}.
// Failures: ErrorKind::IrrationalCriticalLocus, ErrorKind::NotMinimallyCritical.
std::vector<Form<Rational>> critical_linear_factors(const std::vector<Form<Rational>>& f,
                                                    std::uint64_t seed = 0);

// Linear form with the given coefficient vector.
template <class K>
Form<K> linear_form(const std::vector<K>& c) {
  const int n = static_cast<int>(c.size());
  Form<K> out(n, 1);
  for (int i = 0; i < n; ++i) out += Form<K>::variable(n, i).scaled(c[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace mincrit
