#include <cmath>

#include "doctest.h"
#include "mincrit/bounds.hpp"

#include "support.hpp"

namespace {

void require_pass(const BoundSuite& s) {
  for (const auto& smp : s.samples) {
    INFO(smp.description);
    for (const auto& c : smp.report.checks) {
      INFO(c.label);
      CHECK(c.verdict == Verdict::Pass);
    }
  }
  CHECK(s.verdict == Verdict::Pass);
}

}  // namespace

TEST_CASE("corollary bound") {
  CorollaryBound c = corollary_bound(1, 4);
  CHECK(std::abs(c.height_bound.convert_to<double>() - 2.4 * std::log(2.0)) < 1e-15);
  CHECK(std::abs(c.height_bound.convert_to<double>() - 1.66355) < 1e-5);
  CHECK(c.degree_bound == 16);
  CHECK(corollary_bound(2, 8).degree_bound == 512);
  CHECK_THROWS_AS(corollary_bound(1, 3), Error);
}

TEST_CASE("bound kinds round trip") {
  for (auto k : {BoundKind::ThExp, BoundKind::LyapLower, BoundKind::LyapUpper, BoundKind::Coc,
                 BoundKind::Conjugate, BoundKind::FinalProp})
    CHECK(parse_bound_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_bound_kind("nope"), Error);
}

TEST_CASE("identity passes the theorem with both heights zero") {
  BoundReport r = verify_bounds(RatMatrix::identity(2), 4, BoundKind::ThExp);
  REQUIRE(r.checks.size() == 2);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(abs(r.checks[1].small.lo) < 1e-30);
  CHECK_THROWS_AS(verify_bounds(RatMatrix::identity(2), 3, BoundKind::ThExp), Error);
  CHECK_THROWS_AS(verify_bounds(RatMatrix({{2, 0}, {0, 1}}), 4, BoundKind::ThExp), Error);
}

TEST_CASE("sampled normalized matrices are normalized") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    RatMatrix a = sample_normalized(rng, 1 + t % 3);
    CHECK(is_normalized(a));
    CHECK(inverse(a)(0, 1) == 1);
  }
}

TEST_CASE("theorem holds on normalized samples, N = 1, d = 4") {
  require_pass(run_bound_suite(BoundKind::ThExp, 1, 4, 20, 0));
}

TEST_CASE("theorem holds on normalized samples, N = 2, d = 8") {
  require_pass(run_bound_suite(BoundKind::ThExp, 2, 8, 20, 0));
}

TEST_CASE("lower Lyapunov bound per place") {
  require_pass(run_bound_suite(BoundKind::LyapLower, 1, 4, 20, 1));
  require_pass(run_bound_suite(BoundKind::LyapLower, 2, 8, 5, 1));
}

TEST_CASE("upper Lyapunov bound per place") {
  require_pass(run_bound_suite(BoundKind::LyapUpper, 1, 3, 50, 2));
  require_pass(run_bound_suite(BoundKind::LyapUpper, 2, 2, 10, 2));
}

TEST_CASE("change of coordinates bound") {
  require_pass(run_bound_suite(BoundKind::Coc, 1, 3, 20, 3));
  CHECK_THROWS_AS(run_bound_suite(BoundKind::Coc, 2, 3, 2, 3), Error);
}

TEST_CASE("conjugation to monomial form bound") {
  require_pass(run_bound_suite(BoundKind::Conjugate, 1, 2, 20, 4));
  require_pass(run_bound_suite(BoundKind::Conjugate, 2, 2, 5, 4));
}

TEST_CASE("canonical minus naive height sandwich") {
  require_pass(run_bound_suite(BoundKind::FinalProp, 1, 4, 20, 5));
}

TEST_CASE("verdicts from interval comparison") {
  CHECK(make_check("a", {0, 1}, {1, 2}).verdict == Verdict::Pass);
  CHECK(make_check("b", {0, 1}, {Real(0.5), 2}).verdict == Verdict::Inconclusive);
  BoundCheck c = make_check("c", {2, 3}, {0, 1});
  CHECK(c.verdict == Verdict::Falsified);
  CHECK(c.margin == -3);
}

TEST_CASE("local bounds end with the sum over places") {
  BoundReport r = verify_bounds(RatMatrix({{3, 1}, {1, 2}}), 3, BoundKind::LyapUpper);
  REQUIRE(r.checks.size() >= 2);
  CHECK(r.checks.back().label == "sum");
  Real lo = 0, hi = 0;
  for (std::size_t i = 0; i + 1 < r.checks.size(); ++i) {
    lo += r.checks[i].small.lo;
    hi += r.checks[i].large.hi;
  }
  CHECK(abs(r.checks.back().small.lo - lo) < 1e-30);
  CHECK(abs(r.checks.back().large.hi - hi) < 1e-30);
  CHECK(r.checks.back().margin > 0);
}
