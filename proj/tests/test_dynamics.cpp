#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "mincrit/dynamics.hpp"

#include "support.hpp"

namespace {

const RatMatrix kFS1({{1, -2, 0}, {1, 0, 0}, {1, 0, -2}});
const RatMatrix kFS2({{1, -2, 0}, {1, 0, -2}, {1, 0, 0}});
const RatMatrix kDupont({{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}});
const RatMatrix kBK({{1, -1, 0}, {1, 0, -1}, {1, 0, 0}});

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("family generators") {
  CHECK(bk_family({2, 0, 1}, 2) == kBK);
  CHECK(bk_family({0, 1}, 2) == RatMatrix({{1, 0}, {1, -1}}));
  auto fs = rational_matrix(fs_family({1, 0, 2}, 2));
  REQUIRE(fs);
  CHECK(*fs == kFS1);
  CHECK_THROWS_AS(fs_family({1, 0, 2}, 3, 3), Error);
  CHECK_THROWS_AS(bk_family({0, 0, 1}, 2), Error);
  auto fs3 = fs_family({1, 0, 2}, 3);
  CHECK_FALSE(rational_matrix(fs3));
  Cyclotomic z = Cyclotomic::root_of_unity(3, 1);
  CHECK(fs3(0, 1) == z - Cyclotomic(1L));
}

TEST_CASE("BK Jacobians are supported on the coordinate hyperplanes") {
  for (int n = 2; n <= 3; ++n)
    for (const auto& s : all_permutations(n)) {
      auto f = map_components(MapData<Rational>(bk_family(s, 3), 3));
      QF j = jacobian_form(f);
      QF mono = QF::constant(n, rat(1));
      for (int i = 0; i < n; ++i) mono = mono * QF::variable(n, i);
      CHECK(squarefree_part(j) == mono);
    }
}

TEST_CASE("orbit graphs") {
  auto id = orbit_graph(MapData<Rational>(RatMatrix::identity(3), 2));
  REQUIRE(id.closed);
  CHECK(id.nodes.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(id.next[static_cast<std::size_t>(i)] == i);

  auto bk = orbit_graph(MapData<Rational>(kBK, 2));
  REQUIRE(bk.closed);
  for (const auto& f : bk.nodes) CHECK(f.degree() == 1);
  CHECK(replay(bk, MapData<Rational>(kBK, 2)));

  auto du = orbit_graph(MapData<Rational>(kDupont, 2));
  CHECK(du.closed);
  CHECK(replay(du, MapData<Rational>(kDupont, 2)));
}

TEST_CASE("critical types of the introduction examples") {
  CHECK(critical_type(MapData<Rational>(kBK, 2)) == CriticalType{0, 4});
  CHECK(critical_type(MapData<Rational>(kFS1, 2)) == CriticalType{3, 2});
  CHECK(critical_type(MapData<Rational>(RatMatrix::identity(3), 2)) == CriticalType{0, 1});
}

TEST_CASE("engine agrees with the predicted types") {
  for (int n = 3; n <= 4; ++n)
    for (const auto& s : all_permutations(n)) {
      INFO("sigma size " << n << " sigma(0)=" << s[0]);
      MapData<Rational> bk(bk_family(s, 2), 2);
      CHECK(critical_type(bk) == predicted_critical_type(s, Family::BK));
      if (s[0] == 0) {
        CHECK_THROWS_AS(predicted_critical_type(s, Family::FS), Error);
        continue;
      }
      MapData<Rational> fs(*rational_matrix(fs_family(s, 2)), 2);
      CHECK(critical_type(fs) == predicted_critical_type(s, Family::FS));
    }
  CHECK(predicted_critical_type({2, 0, 1}, Family::BK) == CriticalType{0, 4});
  CHECK(predicted_critical_type({1, 0, 2}, Family::FS) == CriticalType{3, 2});
}

TEST_CASE("FS over Q(zeta_3)") {
  std::vector<int> s{1, 2, 0};
  MapData<Cyclotomic> m(fs_family(s, 3), 3);
  auto g = orbit_graph(m);
  REQUIRE(g.closed);
  CHECK(replay(g, m));
  CHECK(critical_type(g) == predicted_critical_type(s, Family::FS));
  // f(H_0) = H_{σ(0)}
  CHECK(g.nodes[static_cast<std::size_t>(g.next[0])] == Form<Cyclotomic>::variable(3, s[0]));
}

TEST_CASE("PCF certification") {
  for (const auto& a : {kFS1, kFS2, kDupont, kBK}) {
    auto r = pcf_certify(MapData<Rational>(a, 2));
    CHECK(r.status == PcfStatus::PCF);
    CHECK(replay(r.graph, MapData<Rational>(a, 2)));
  }
  auto np = pcf_certify(MapData<Rational>(RatMatrix({{1, 1}, {0, 1}}), 4));
  CHECK(np.status == PcfStatus::NotPCF);
  REQUIRE(np.height);
  CHECK(np.height->lower > 0);
  auto tiny = pcf_certify(MapData<Rational>(kDupont, 2), OrbitBudget{2, 16});
  CHECK(tiny.status == PcfStatus::Inconclusive);
  CHECK_FALSE(tiny.graph.closed);
  CHECK_THROWS_AS(critical_type(tiny.graph), Error);
}

TEST_CASE("larger budgets keep certificates") {
  MapData<Rational> m(kDupont, 2);
  auto small = orbit_graph(m);
  auto big = orbit_graph(m, OrbitBudget{1000, 64});
  REQUIRE(small.closed);
  REQUIRE(big.closed);
  CHECK(small.nodes == big.nodes);
  CHECK(small.next == big.next);
}

TEST_CASE("Landau function") {
  const long expect[] = {1, 2, 3, 4, 6, 6, 12, 15, 20, 30};
  for (int n = 1; n <= 10; ++n) CHECK(landau(n) == expect[n - 1]);
  CHECK(landau(40) > landau(30));
  CHECK_THROWS_AS(landau(0), Error);
  CHECK_THROWS_AS(landau(41), Error);
}
