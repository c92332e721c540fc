#pragma once

// The action of permutation-diagonal matrices on GL_{N+1}, normalized lifts
// and good representatives of an orbit, and conjugation of a minimally
// critical map to the form AX^d.

#include <vector>

#include "mincrit/heights.hpp"

namespace mincrit {

// M = P D with P e_j = e_{perm[j]}.
template <class K>
struct GElement {
  std::vector<int> perm;
  std::vector<K> diag;

  static GElement identity(std::size_t n) {
    GElement g;
    for (std::size_t i = 0; i < n; ++i) {
      g.perm.push_back(static_cast<int>(i));
      g.diag.push_back(Ring<K>::one());
    }
    return g;
  }
  static GElement diagonal(std::vector<K> d) {
    GElement g = identity(d.size());
    g.diag = std::move(d);
    return g;
  }
  static GElement permutation(std::vector<int> p) {
    GElement g = identity(p.size());
    g.perm = std::move(p);
    return g;
  }

  std::size_t size() const { return perm.size(); }

  // Entries raised to the e-th power.
  Matrix<K> matrix(unsigned e = 1) const {
    Matrix<K> m(size());
    for (std::size_t j = 0; j < size(); ++j) {
      K x = Ring<K>::one();
      for (unsigned k = 0; k < e; ++k) x *= diag[j];
      m(static_cast<std::size_t>(perm[j]), j) = x;
    }
    return m;
  }

  // Acting by g.then(h) is acting by g, then by h; its matrix is M_g M_h.
  GElement then(const GElement& h) const {
    GElement out = identity(size());
    for (std::size_t j = 0; j < size(); ++j) {
      int k = h.perm[j];
      out.perm[j] = perm[static_cast<std::size_t>(k)];
      out.diag[j] = h.diag[j] * diag[static_cast<std::size_t>(k)];
    }
    return out;
  }

  void check() const {
    std::vector<bool> seen(size(), false);
    if (diag.size() != size()) fail(ErrorKind::Domain, "permutation and diagonal differ in size");
    for (int p : perm) {
      if (p < 0 || p >= static_cast<int>(size()) || seen[static_cast<std::size_t>(p)])
        fail(ErrorKind::Domain, "not a permutation");
      seen[static_cast<std::size_t>(p)] = true;
    }
    for (const auto& x : diag)
      if (Ring<K>::is_zero(x)) fail(ErrorKind::Domain, "zero diagonal entry");
  }
};

// M^{-1} A M^{(d)}, so that f_A^M = f_{M.A}.
template <class K>
Matrix<K> g_action(const GElement<K>& g, const Matrix<K>& a, unsigned d) {
  g.check();
  if (g.size() != a.size()) fail(ErrorKind::Domain, "dimension mismatch");
  return inverse(g.matrix()) * a * g.matrix(d);
}

// Every row of A^{-1} contains a 1 (within 1e-9 for complex entries).
bool is_normalized(const RatMatrix& a);
bool is_normalized(const Matrix<Complex>& a);

struct NormalizedLift {
  bool exact = false;
  RatMatrix D;              // when exact
  Matrix<Complex> Dc;       // always
  std::vector<int> sigma;   // the chosen column per row
};

// Diagonal D with every row of D^{-d} B D containing a 1. sigma, if given,
// overrides the column choice (each B_{i, sigma(i)} must be nonzero).
NormalizedLift normalized_lift(const RatMatrix& b, unsigned d, std::vector<int> sigma = {});
NormalizedLift normalized_lift(const Matrix<Complex>& b, unsigned d, std::vector<int> sigma = {});

struct NormalizedOrbit {
  bool exact = false;
  RatMatrix A;           // D^{-1} A D^d, when exact
  Matrix<Complex> Ac;    // always
  NormalizedLift lift;
};
NormalizedOrbit normalize(const RatMatrix& a, unsigned d);

struct GoodRepCheck {
  Place place;
  Real lhs;
  Real rhs;
  bool holds() const { return lhs <= rhs + Real(1e-20); }
};

struct GoodRep {
  bool exact = false;
  RatMatrix A;  // when exact
  Matrix<Complex> Ac;
  GElement<Complex> g;  // Ac = g_action(g, A)
  std::vector<GoodRepCheck> checks;
  bool holds() const;
};

// Places where the goodrep inequality is checked for an exact matrix.
std::vector<Place> goodrep_places(const RatMatrix& a);
// Both sides of the inequality at v: log||A|| + N^2 log|M_{1,0}| and
// N sum_i log||A_* X_i|| + (1+N^2) log|det A| + log+|N!|.
GoodRepCheck goodrep_inequality(const RatMatrix& a, const Place& v);
GoodRepCheck goodrep_inequality(const Matrix<Complex>& a);

GoodRep goodrep(const RatMatrix& a, unsigned d);

// B^{-1} F(BX)
std::vector<Form<Rational>> conjugate_map(const std::vector<Form<Rational>>& f, const RatMatrix& b);

struct Monomialized {
  RatMatrix B;
  RatMatrix A;  // f^B = f_A
  bool bound_checked = false;
  Real h_pgl_b = 0;
  Real bound = 0;  // (N+1) h_hom(f) + h(N!) + (N+1) h(d) + h((N+1)!) + 2N(N+1)(d-1) h(2)
};
Monomialized monomialize(const std::vector<Form<Rational>>& f);

}  // namespace mincrit
