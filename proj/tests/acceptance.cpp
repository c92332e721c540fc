// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes except those in kKnownFailures,
// which are still run and reported as FAIL with their measured values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "mincrit/bounds.hpp"
#include "mincrit/dynamics.hpp"
#include "mincrit/poly_gcd.hpp"

#include "support.hpp"

namespace {

// Envelope width 2.7e-3 at k = 4; see README.
const std::set<int> kKnownFailures{3};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

std::string fmt(const Real& x, int digits = 6) { return decimal(x, digits); }

const RatMatrix kFS1({{1, -2, 0}, {1, 0, 0}, {1, 0, -2}});
const RatMatrix kFS2({{1, -2, 0}, {1, 0, -2}, {1, 0, 0}});
const RatMatrix kDupont({{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}});
const RatMatrix kBK({{1, -1, 0}, {1, 0, -1}, {1, 0, 0}});

bool overlap(const Real& alo, const Real& ahi, const Real& blo, const Real& bhi, double tol) {
  return alo <= bhi + tol && blo <= ahi + tol;
}

std::string place_tag(const Place& v) { return "v=" + v.name(); }

// 1

Outcome pcf_certificates() {
  Outcome o;
  const std::vector<std::pair<std::string, RatMatrix>> cases{
      {"FS1", kFS1}, {"FS2", kFS2}, {"Dupont", kDupont}, {"BK", kBK}};
  std::ostringstream detail;
  for (const auto& [name, a] : cases) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = pcf_certify(MapData<Rational>(a, 2), OrbitBudget{200, 16});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(r.status == PcfStatus::PCF, name + " not certified: " + r.graph.stop_reason);
    o.require(secs < 60, name + " took " + std::to_string(secs) + " s");
    o.require(replay(r.graph, MapData<Rational>(a, 2)), name + " graph does not replay");
    if (r.status != PcfStatus::PCF) continue;
    CriticalType t = critical_type(r.graph);
    detail << name << "=(" << t.k << "," << t.m << ") ";
    if (name == "BK") o.require(t == CriticalType{0, 4}, "BK type is not (0,4)");
    if (name == "FS1") o.require(t == CriticalType{3, 2}, "FS1 type is not (3,2)");
  }
  o.detail = detail.str();
  return o;
}

// 2

// Permutation-diagonal B: B e_j = b_j e_{perm[j]}.
RatMatrix perm_diag(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  RatMatrix b(n);
  for (std::size_t j = 0; j < n; ++j)
    b(static_cast<std::size_t>(perm[j]), j) =
        rat((static_cast<long>(rng() % 5) + 1) * (rng() % 2 ? 1 : -1), static_cast<long>(rng() % 4) + 1);
  return b;
}

Rational random_scalar(std::mt19937_64& rng) {
  return rat(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 20) + 1);
}

std::vector<Place> with_primes(std::vector<Place> places, const Rational& alpha) {
  for (auto p : support_primes(alpha)) places.push_back(Place::prime(p));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  return places;
}

void greens_properties(Outcome& o, std::mt19937_64& rng, std::size_t n, int& checks) {
  const double tol = 1e-6;
  RatMatrix a = random_matrix(rng, n);
  const unsigned d = 2;
  MapData<Rational> m(a, d);
  const int N = m.N;
  const int k = n == 2 ? 4 : 2;
  QF f = random_form(rng, m.nvars(), 1, 2);
  QF g = random_form(rng, m.nvars(), 1, 3);
  Rational alpha = random_scalar(rng);
  std::string tag = "n=" + std::to_string(n) + " A=" + to_string(a(0, 0)) + ".. ";
  std::vector<Place> bad = bad_places(a, d, N);
  Rational dn1q = 1, dk = 1;
  for (int i = 0; i <= N; ++i) dn1q *= d;
  for (int i = 0; i < k; ++i) dk *= d;
  const Real dn1 = real_from(dn1q);

  // (1) pushforward: depth j of F_*Φ is depth j+1 of Φ
  QF pf = map_pushforward(f, m);
  const int j = n == 2 ? k : 1;
  for (const auto& v : bad) {
    auto x = greens_estimate(m, pf, v, j);
    auto y = greens_estimate(m, f, v, j + 1);
    if (v.is_archimedean())
      o.require(abs(x.value - dn1 * y.value) < 1e-9 &&
                    overlap(x.lower, x.upper, dn1 * y.lower, dn1 * y.upper, 1e-12),
                tag + "(1) " + place_tag(v));
    else
      o.require(*x.exact == *y.exact * dn1q, tag + "(1) " + place_tag(v));
    ++checks;
  }

  // (2) pullback
  QF pb = map_pullback(f, m);
  for (const auto& v : bad) {
    auto x = greens_estimate(m, pb, v, k);
    auto y = greens_estimate(m, f, v, k);
    o.require(overlap(x.lower, x.upper, y.lower, y.upper, tol), tag + "(2) " + place_tag(v));
    ++checks;
  }

  // (3) scaling of the form
  for (const auto& v : with_primes(bad, alpha)) {
    auto x = greens_estimate(m, f.scaled(alpha), v, k);
    auto y = greens_estimate(m, f, v, k);
    if (v.is_archimedean())
      o.require(abs(x.value - y.value - log_abs(alpha, v)) < 1e-9, tag + "(3) " + place_tag(v));
    else
      o.require(*x.exact - *y.exact == -valuation(alpha, v.p), tag + "(3) " + place_tag(v));
    ++checks;
  }

  // (4) scaling of the matrix; at depth k the shift is deg/(d-1) (1 - d^-k) log|α|
  MapData<Rational> ms(a.map([&](const Rational& x) { return Rational(x * alpha); }), d);
  Rational geo = Rational(f.degree()) / (d - 1) * (1 - 1 / dk);
  Real limit_shift = Real(f.degree()) / (d - 1);
  for (const auto& v : with_primes(bad, alpha)) {
    auto x = greens_estimate(ms, f, v, k);
    auto y = greens_estimate(m, f, v, k);
    if (v.is_archimedean()) {
      Real s = limit_shift * log_abs(alpha, v);
      o.require(abs(x.value - y.value + real_from(geo) * log_abs(alpha, v)) < 1e-9 &&
                    overlap(x.lower, x.upper, y.lower - s, y.upper - s, tol),
                tag + "(4) " + place_tag(v));
    } else {
      o.require(*x.exact - *y.exact == geo * valuation(alpha, v.p), tag + "(4) " + place_tag(v));
    }
    ++checks;
  }

  // (7) additivity
  for (const auto& v : bad) {
    auto x = greens_estimate(m, f * g, v, k);
    auto y = greens_estimate(m, f, v, k);
    auto z = greens_estimate(m, g, v, k);
    if (v.is_archimedean())
      o.require(overlap(x.lower, x.upper, y.lower + z.lower, y.upper + z.upper, tol),
                tag + "(7) " + place_tag(v));
    else
      o.require(*x.exact == *y.exact + *z.exact, tag + "(7) " + place_tag(v));
    ++checks;
  }

  // (8) conjugation by permutation-diagonal B: G_{A^B}(Φ) = G_A(B_*Φ)
  RatMatrix b = perm_diag(rng, n);
  RatMatrix bd = b.map([&](const Rational& x) {
    Rational p = 1;
    for (unsigned i = 0; i < d; ++i) p *= x;
    return p;
  });
  MapData<Rational> mb(inverse(b) * a * bd, d);
  QF bf = linear_pushforward(f, b);
  std::vector<Place> places = bad;
  for (const auto& v : bad_places(mb.A, d, N)) places.push_back(v);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  for (const auto& v : places) {
    auto x = greens_estimate(mb, f, v, k);
    auto y = greens_estimate(m, bf, v, k);
    o.require(overlap(x.lower, x.upper, y.lower, y.upper, tol), tag + "(8) " + place_tag(v));
    ++checks;
  }
}

Outcome greens_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int checks = 0;
  for (int t = 0; t < 50; ++t) greens_properties(o, rng, 2, checks);
  for (int t = 0; t < 50; ++t) greens_properties(o, rng, 3, checks);
  o.detail = "100 matrices, " + std::to_string(checks) + " place checks";
  return o;
}

// 3

Outcome anchor() {
  Outcome o;
  MapData<Rational> m(RatMatrix({{2, 0}, {0, 1}}), 4);
  auto g = greens_estimate(m, QF::variable(2, 0), Place::archimedean(), 4);
  Real target = -real_log2() / 3;
  o.require(g.lower <= target && target <= g.upper, "-log 2/3 outside the envelope");
  o.require(g.width() < 1e-3, "envelope width " + fmt(g.width(), 4) + " >= 1e-3");
  o.detail = "value " + fmt(g.value, 10) + ", envelope [" + fmt(g.lower, 8) + ", " + fmt(g.upper, 8) +
             "], width " + fmt(g.width(), 4);
  return o;
}

// 4

Outcome a_priori() {
  Outcome o;
  std::mt19937_64 rng(4048);
  int violations = 0, estimates = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    unsigned d = n == 2 ? 2 + static_cast<unsigned>(t % 3) : 2;
    MapData<Rational> m(random_matrix(rng, n), d);
    QF f = random_form(rng, m.nvars(), 1 + static_cast<unsigned>(rng() % 2), 3);
    for (const auto& v : bad_places(m.A, m.d, m.N)) {
      auto [lo, hi] = greens_global_bounds(m, f, v);
      // last iterate of degree at most 600 on the line, 32 on the plane
      const double cap = n == 2 ? 600 : 32;
      for (int k = 0; k <= 5 && f.degree() * std::pow(d, k * m.N) <= cap; ++k) {
        auto g = greens_estimate(m, f, v, k);
        ++estimates;
        bool ok = g.lower >= lo - 1e-12 && g.upper <= hi + 1e-12;
        if (!ok) ++violations;
        o.require(ok, "instance " + std::to_string(t) + " " + place_tag(v) + " k=" + std::to_string(k));
      }
    }
  }
  o.detail = std::to_string(estimates) + " estimates, " + std::to_string(violations) + " violations";
  return o;
}

// 5

Outcome height_anchors() {
  Outcome o;
  std::ostringstream detail;
  for (int N = 1; N <= 3; ++N)
    for (unsigned d : {2u, 3u}) {
      HeightReport r = critical_height(MapData<Rational>(RatMatrix::identity(static_cast<std::size_t>(N + 1)), d));
      o.require(abs(r.total) < 1e-9 && r.lower <= Real(1e-9) && r.upper >= Real(-1e-9),
                "power map N=" + std::to_string(N) + " d=" + std::to_string(d));
    }
  HeightReport bk = critical_height(MapData<Rational>(kBK, 2));
  o.require(bk.lower <= 0 && bk.upper >= 0, "BK envelope excludes 0");
  detail << "BK [" << fmt(bk.lower) << ", " << fmt(bk.upper) << "]";
  HeightReport u = critical_height(MapData<Rational>(RatMatrix({{1, 1}, {0, 1}}), 4));
  o.require(u.lower > 0, "[[1,1],[0,1]] lower envelope not positive");
  o.require(u.upper - u.lower < 1e-3, "[[1,1],[0,1]] width " + fmt(u.upper - u.lower));
  detail << "; [[1,1],[0,1]] d=4 [" << fmt(u.lower, 8) << ", " << fmt(u.upper, 8) << "] at k=" << u.k;
  o.detail = detail.str();
  return o;
}

// 6

Outcome functoriality() {
  Outcome o;
  std::mt19937_64 rng(606);
  const unsigned d = 4;
  const Real s = d * d;
  Real worst = 0;
  for (int t = 0; t < 20; ++t) {
    MapData<Rational> m(random_matrix(rng, 2), d);
    QF phi = random_form(rng, 2, 1 + static_cast<unsigned>(t % 2), 2);
    HeightReport h = divisor_canonical_height(m, phi, 4).canonical;
    HeightReport hp = divisor_canonical_height(m, map_pushforward(phi, m), 3).canonical;
    o.require(overlap(hp.lower, hp.upper, s * h.lower, s * h.upper, 1e-12),
              "case " + std::to_string(t) + " envelopes disjoint");
    worst = std::max(worst, abs(hp.total - s * h.total));
  }
  o.detail = "20 cases, max |h(F_*D) - d^2 h(D)| = " + fmt(worst, 3);
  return o;
}

// 7

Outcome inequality_suites() {
  Outcome o;
  std::ostringstream detail;
  auto run = [&](BoundKind which, int N, unsigned d) {
    auto t0 = std::chrono::steady_clock::now();
    BoundSuite s = run_bound_suite(which, N, d, 20, 0);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string name = to_string(which) + "(" + std::to_string(N) + "," + std::to_string(d) + ")";
    o.require(s.verdict == Verdict::Pass, name + " verdict " + to_string(s.verdict));
    // Local bounds are sharp at places of good reduction, so positivity is
    // required of the summed inequality; every place must still pass.
    Real margin = 0;
    int tight = 0;
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      const auto& checks = s.samples[i].report.checks;
      Real m = s.samples[i].report.min_margin;
      if (checks.back().label == "sum") {
        m = checks.back().margin;
        for (const auto& c : checks) tight += c.label != "sum" && abs(c.margin) < 1e-20;
      }
      if (i == 0 || m < margin) margin = m;
    }
    o.require(margin > 0, name + " margin " + fmt(margin));
    if (which == BoundKind::ThExp)
      for (const auto& x : s.samples) o.require(x.report.checks.size() == 2, name + " missing a direction");
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.1fs", secs);
    detail << name << " margin " << fmt(margin, 3);
    if (tight) detail << " (" << tight << " places with equality)";
    detail << buf << "; ";
  };
  for (BoundKind k : {BoundKind::ThExp, BoundKind::LyapUpper, BoundKind::LyapLower, BoundKind::FinalProp}) {
    run(k, 1, 4);
    run(k, 2, 8);
  }
  run(BoundKind::Coc, 1, 4);
  o.require(make_check("probe", {Real(1), Real(2)}, {Real(0), Real(0.5)}).verdict == Verdict::Falsified,
            "a violation beyond the envelopes is not flagged as falsified");
  o.detail = detail.str();
  return o;
}

// 8

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Outcome landau_and_types() {
  Outcome o;
  const long expected[] = {1, 2, 3, 4, 6, 6, 12, 15, 20, 30};
  for (int n = 1; n <= 10; ++n)
    o.require(landau(n) == expected[n - 1], "g(" + std::to_string(n) + ") = " + std::to_string(landau(n)));
  int compared = 0, skipped = 0;
  for (int n : {3, 4})
    for (const auto& sigma : all_permutations(n))
      for (Family fam : {Family::BK, Family::FS}) {
        if (fam == Family::FS && sigma[0] == 0) {
          ++skipped;  // the prediction assumes σ(0) != 0
          continue;
        }
        CriticalType want = predicted_critical_type(sigma, fam);
        CriticalType got = fam == Family::BK ? critical_type(MapData<Rational>(bk_family(sigma, 2), 2))
                                             : critical_type(MapData<Cyclotomic>(fs_family(sigma, 2), 2));
        std::ostringstream s;
        for (int x : sigma) s << x;
        o.require(got == want, (fam == Family::BK ? "bk " : "fs ") + s.str());
        ++compared;
      }
  o.detail = "g(1..10) checked; " + std::to_string(compared) + " permutations compared, " +
             std::to_string(skipped) + " fs with sigma(0)=0 skipped";
  return o;
}

// 9

// The hypersurface {φ(MX) = 0}, normalized.
QF transport_node(const QF& phi, const RatMatrix& m) { return normalize_projective(linear_pullback(phi, m)); }

// Nodes of g are the images of nodes of h under X -> M^{-1}X, edges and
// roots correspond.
bool isomorphic(const OrbitGraph<Rational>& h, const OrbitGraph<Rational>& g, const RatMatrix& m) {
  if (!h.closed || !g.closed || h.nodes.size() != g.nodes.size()) return false;
  std::vector<int> image(h.nodes.size(), -1);
  std::vector<bool> used(g.nodes.size(), false);
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    QF t = transport_node(h.nodes[i], m);
    for (std::size_t j = 0; j < g.nodes.size(); ++j)
      if (!used[j] && g.nodes[j] == t) {
        image[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    if (image[i] < 0) return false;
  }
  for (std::size_t i = 0; i < h.nodes.size(); ++i)
    if (g.next[static_cast<std::size_t>(image[i])] != image[static_cast<std::size_t>(h.next[i])]) return false;
  std::set<int> roots(g.roots.begin(), g.roots.end());
  for (int r : h.roots)
    if (!roots.count(image[static_cast<std::size_t>(r)])) return false;
  return true;
}

Outcome normal_forms() {
  Outcome o;
  std::mt19937_64 rng(909);
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    unsigned d = 2 + static_cast<unsigned>(t % 4);
    RatMatrix b = random_matrix(rng, n);
    NormalizedLift l = normalized_lift(b, d);
    // D^{-d} B D has a 1 at (i, sigma(i))
    if (l.exact) {
      ++exact;
      RatMatrix dinv = inverse(l.D);
      RatMatrix p = RatMatrix::identity(n);
      for (unsigned i = 0; i < d; ++i) p = p * dinv;
      RatMatrix r = p * b * l.D;
      for (std::size_t i = 0; i < n; ++i)
        o.require(r(i, static_cast<std::size_t>(l.sigma[i])) == 1, "exact lift " + std::to_string(t));
    }
    Matrix<Complex> bc = b.map([](const Rational& x) { return Complex(x); });
    Matrix<Complex> dinv = inverse(l.Dc);
    Matrix<Complex> p = Matrix<Complex>::identity(n);
    for (unsigned i = 0; i < d; ++i) p = p * dinv;
    Matrix<Complex> r = p * bc * l.Dc;
    for (std::size_t i = 0; i < n; ++i)
      o.require(abs(r(i, static_cast<std::size_t>(l.sigma[i])) - Complex(Real(1))) < 1e-9,
                "complex lift " + std::to_string(t));
  }

  int recovered = 0;
  const auto perms = all_permutations(3);
  std::uniform_int_distribution<long> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    RatMatrix a = bk_family(perms[static_cast<std::size_t>(t) % perms.size()], 2);
    RatMatrix c;
    do {
      c = RatMatrix::identity(3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j && rng() % 2) c(i, j) = u(rng);
    } while (is_singular(c));
    auto f = conjugate_map(map_components(MapData<Rational>(a, 2)), c);
    Monomialized mono = monomialize(f);
    std::string tag = "BK instance " + std::to_string(t);
    o.require(conjugate_map(f, mono.B) == map_components(MapData<Rational>(mono.A, 2)), tag + " not monomial");
    o.require(!mono.bound_checked || mono.h_pgl_b <= mono.bound, tag + " h(B) bound");
    MapData<Rational> ma(a, 2), mr(mono.A, 2);
    o.require(isomorphic(orbit_graph(ma), orbit_graph(mr), c * mono.B), tag + " orbit graphs differ");
    HeightReport h1 = critical_height(ma, 2), h2 = critical_height(mr, 2);
    bool agree = overlap(h1.lower, h1.upper, h2.lower, h2.upper, 1e-12);
    o.require(agree, tag + " heights disagree");
    if (agree) ++recovered;
  }
  o.detail = "100 lifts (" + std::to_string(exact) + " exact), " + std::to_string(recovered) +
             "/20 BK orbits recovered";
  return o;
}

// 10

Outcome corollary_constants() {
  Outcome o;
  CorollaryBound c = corollary_bound(1, 4);
  Real want = Real(12) / 5 * real_log2();
  o.require(abs(c.height_bound - want) < 1e-12, "height bound " + fmt(c.height_bound, 15));
  o.require(c.degree_bound == 16, "degree bound " + c.degree_bound.get_str());
  o.detail = "(" + fmt(c.height_bound, 13) + ", " + c.degree_bound.get_str() + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, pcf_certificates}, {2, greens_suite},      {3, anchor},
      {4, a_priori},         {5, height_anchors},    {6, functoriality},
      {7, inequality_suites}, {8, landau_and_types}, {9, normal_forms},
      {10, corollary_constants}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << " (" << timing << ") "
              << r.detail;
    if (!r.pass && kKnownFailures.count(id)) std::cout << " [known failure]";
    std::cout << "\n";
    for (const auto& p : r.problems) std::cout << "    " << p << "\n";
    std::cout.flush();
    if (!r.pass && !kKnownFailures.count(id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
