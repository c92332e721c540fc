#pragma once

// Numerical checks of the height inequalities: each check compares an
// interval that should be smaller against one that should be larger.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mincrit/normal_form.hpp"

namespace mincrit {

enum class BoundKind { ThExp, LyapLower, LyapUpper, Coc, Conjugate, FinalProp };
std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);

enum class Verdict { Pass, Inconclusive, Falsified };
std::string to_string(Verdict v);

struct Interval {
  Real lo = 0;
  Real hi = 0;
  static Interval exact(const Real& x) { return {x, x}; }
};

struct BoundCheck {
  std::string label;
  Interval small;
  Interval large;
  Real margin = 0;  // large.lo - small.hi
  Verdict verdict = Verdict::Pass;
};

// lyapLower, lyapUpper and coc check each place and end with a "sum" check,
// the inequality summed over places.
struct BoundReport {
  BoundKind which = BoundKind::ThExp;
  std::vector<BoundCheck> checks;
  Verdict verdict = Verdict::Pass;
  Real min_margin = 0;
};

// Pass when large.lo >= small.hi - 1e-12, falsified when
// large.hi < small.lo - 1e-9, inconclusive otherwise.
BoundCheck make_check(std::string label, Interval small, Interval large);

// Optional inputs; which ones are needed depends on the bound.
struct BoundInputs {
  std::optional<std::vector<Form<Rational>>> f;  // coc: the map (default f_A)
  std::optional<RatMatrix> B;                    // coc (required), conjugate (N = 1)
  std::optional<Form<Rational>> phi;             // finalProp (required)
  int k = -1;                                    // Greens depth, -1 for the default
};

BoundReport verify_bounds(const RatMatrix& a, unsigned d, BoundKind which,
                          const BoundInputs& in = {});

struct BoundSample {
  std::string description;
  BoundReport report;
};

struct BoundSuite {
  BoundKind which;
  int N = 1;
  unsigned d = 2;
  std::vector<BoundSample> samples;
  Verdict verdict = Verdict::Pass;
  Real min_margin = 0;
};

// Random inputs from the sampling grid of each bound.
BoundSuite run_bound_suite(BoundKind which, int N, unsigned d, int samples, std::uint64_t seed);

// A = B^{-1} where B has a 1 in every row and B_{0,1} = 1.
RatMatrix sample_normalized(std::mt19937_64& rng, int N, long range = 6);

struct CorollaryBound {
  Real height_bound;
  Integer degree_bound;
};
CorollaryBound corollary_bound(int N, unsigned d);

}  // namespace mincrit
