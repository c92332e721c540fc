#pragma once

// Greens functions G(Φ) = lim d^{-k(N+1)} log ||F_*^k Φ||_v.
//
// The archimedean kernel iterates in MPFR, renormalising after each step and
// raising the working precision ahead of every step by an a-priori bound on
// the cancellation. The finite kernel iterates in Z/p^r after factoring out
// the content, so its values are exact rational multiples of log p.

#include <cstdint>
#include <optional>
#include <utility>

#include "mincrit/norms.hpp"
#include "mincrit/transport.hpp"

namespace mincrit {

constexpr unsigned kDefaultMaxDegree = 4096;

struct GreensValue {
  Place place;
  Real value = 0;
  Real lower = 0;
  Real upper = 0;
  int k = 0;
  unsigned degree_reached = 0;
  // Finite places: value = exact * log p.
  std::optional<Rational> exact;

  Real width() const { return upper - lower; }
};

// Per-step constants of the telescoping argument at v.
struct StepConstants {
  Real a_lo;  // log||A|| + log+|2|
  Real a_hi;  // N log||A|| - log|det A| + log+|2 N!|
  Real b;     // log+|2|
};

StepConstants step_constants(const RatMatrix& a, const Place& v);
StepConstants step_constants(const Matrix<Cyclotomic>& a, const Place& v);

// Tail bounds for the steps beyond k: G - estimate_k lies in [lo, hi].
std::pair<Real, Real> tail_bounds(const StepConstants& c, unsigned deg, unsigned d, int N, int k);

GreensValue greens_estimate(const MapData<Rational>& m, const Form<Rational>& phi, const Place& v,
                            int k, unsigned max_degree = kDefaultMaxDegree);
// Archimedean only.
GreensValue greens_estimate(const MapData<Rational>& m, const Form<Complex>& phi, const Place& v,
                            int k, unsigned max_degree = kDefaultMaxDegree);
GreensValue greens_estimate(const MapData<Cyclotomic>& m, const Form<Cyclotomic>& phi,
                            const Place& v, int k, unsigned max_degree = kDefaultMaxDegree);

std::pair<Real, Real> greens_global_bounds(const MapData<Rational>& m, const Form<Rational>& phi,
                                           const Place& v);
std::pair<Real, Real> greens_global_bounds(const MapData<Cyclotomic>& m,
                                           const Form<Cyclotomic>& phi, const Place& v);

// Largest depth allowed by the degree budget.
int max_depth(unsigned deg, unsigned d, int N, unsigned max_degree = kDefaultMaxDegree);

// Smallest k whose envelope is narrower than `width`, capped by max_depth and
// by the number of monomials of the last iterate. Linear forms on the line
// skip the monomial cap (their iterates stay powers of linear forms).
constexpr std::size_t kDefaultMaxTerms = 2200;
int default_depth(const StepConstants& c, unsigned deg, unsigned d, int N, double width = 1e-6,
                  unsigned max_degree = kDefaultMaxDegree, std::size_t max_terms = kDefaultMaxTerms);
template <class K>
int default_depth(const MapData<K>& m, const Form<K>& phi, const StepConstants& c,
                  double width = 1e-6, unsigned max_degree = kDefaultMaxDegree) {
  std::size_t terms = (m.N == 1 && phi.degree() == 1) ? SIZE_MAX : kDefaultMaxTerms;
  return default_depth(c, phi.degree(), m.d, m.N, width, max_degree, terms);
}

// Quasi-Monte-Carlo estimate of the Mahler measure (test oracle only).
Real mahler_mc(const Form<Rational>& phi, long samples, std::uint64_t seed);
Real mahler_mc(const Form<Complex>& phi, long samples, std::uint64_t seed);

}  // namespace mincrit
