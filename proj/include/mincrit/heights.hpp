#pragma once

// Local and global heights over Q.

#include <string>
#include <vector>

#include "mincrit/greens.hpp"

namespace mincrit {

struct PlaceTerm {
  Place place;
  Real value;
  Real lower;
  Real upper;
};

enum class HeightKind { PGL, Hom, Crit, Divisor, Naive };
std::string to_string(HeightKind k);

struct HeightReport {
  HeightKind kind = HeightKind::Naive;
  Real total = 0;
  Real lower = 0;
  Real upper = 0;
  std::vector<PlaceTerm> per_place;  // canonical place order
  int k = 0;                         // Greens depth where relevant

  // Sums per_place in order into total/lower/upper.
  void assemble();
};

// -log|det A|/(N+1) + log||A||
Real lambda_pgl(const RatMatrix& a, const Place& v);
// Places where lambda_pgl can be nonzero.
std::vector<Place> pgl_places(const RatMatrix& a);
HeightReport h_pgl(const RatMatrix& a);

// Resultant of two binary forms.
Rational sylvester_resultant(const Form<Rational>& f, const Form<Rational>& g);
// Res(F) for F = AX^d (any N <= 3, det(A)^{d^N}) or a general pair of binary forms.
Rational hom_resultant(const std::vector<Form<Rational>>& f);
// -log|Res F| / ((N+1) d^N) + log||F||
Real lambda_hom(const std::vector<Form<Rational>>& f, const Place& v);
HeightReport h_hom(const std::vector<Form<Rational>>& f);

struct LyapunovLocal {
  Place place;
  Real value = 0;
  Real lower = 0;
  Real upper = 0;
  int k = 0;
  std::vector<GreensValue> parts;  // G_v(X_0), ..., G_v(X_N)
};

// (d-1) sum_i G_v(X_i) + N log|d|_v + log|det A|_v
LyapunovLocal local_lyapunov(const MapData<Rational>& m, const Place& v, int k);
// Depth used when none is given: the default for a coordinate form.
int default_lyapunov_depth(const MapData<Rational>& m, const Place& v);

// Sum of L_v over the bad places; k < 0 picks a default per place.
HeightReport critical_height(const MapData<Rational>& m, int k = -1);

struct DivisorHeight {
  HeightReport canonical;
  HeightReport naive;
};
DivisorHeight divisor_canonical_height(const MapData<Rational>& m, const Form<Rational>& phi,
                                       int k = -1);

// log+ |n|_v for a positive integer n.
Real log_plus_int(const Integer& n, const Place& v);
Integer factorial_int(int n);

}  // namespace mincrit
