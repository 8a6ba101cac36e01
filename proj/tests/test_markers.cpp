#include <doctest.h>

#include "markcode/oracle.hpp"
#include "markcode/towers.hpp"
#include "markcode/words.hpp"

using namespace mc;

namespace {

bool all_ok(const std::vector<TowerCheck>& checks) {
  for (auto& c : checks)
    if (!c.ok) return false;
  return true;
}

}  // namespace

TEST_SUITE("markers") {
  TEST_CASE("periodic neighbourhoods") {
    System g = golden_mean();
    auto one = periodic_neighborhood(g, 1, 2);
    CHECK(one.set.patterns_at(2) == std::vector<std::string>{"00000"});
    auto two = periodic_neighborhood(g, 2, 2);
    CHECK(two.set.patterns_at(2) == std::vector<std::string>{"00000", "01010", "10101"});
    CHECK(two.orbits == std::vector<std::string>{"0", "01"});
    CHECK(two.orbit_of.at("01010") == two.orbit_of.at("10101"));
    CHECK(two.orbit_of.at("00000") != two.orbit_of.at("01010"));
  }

  TEST_CASE("dyadic odometer towers") {
    System o = make_odometer({2, 2, 2, 2, 2, 2});
    auto towers = build_odometer_towers(o, TowerParams::from({2, 4, 8}, {0, 0, 0}));
    REQUIRE(towers.size() == 3);
    CHECK(towers[0].U == OdoClopen::prefix(o, {0}));
    CHECK(towers[0].nprime == 2);
    CHECK(towers[1].U == OdoClopen::prefix(o, {0, 0}));
    for (size_t k = 0; k < towers.size(); ++k) CHECK(all_ok(verify_tower(towers[k], k ? &towers[k - 1] : nullptr, true)));
  }

  TEST_CASE("golden mean towers at desk scale") {
    System g = golden_mean();
    auto towers = build_towers(g, TowerParams::from({2, 3}, {2, 4}));
    REQUIRE(towers.size() == 2);
    for (size_t k = 0; k < towers.size(); ++k) CHECK(all_ok(verify_tower(towers[k], k ? &towers[k - 1] : nullptr, false)));
    // off the hull only the periodic window remains
    CHECK(towers[0].per_eps.subset_of(towers[0].per));
  }

  TEST_CASE("full shift towers avoid the fixed points") {
    System f = full_shift(2);
    auto towers = build_towers(f, TowerParams::from({2}, {2}));
    REQUIRE(towers.size() == 1);
    CHECK((towers[0].U & ClopenSet::cylinder(f, -2, "00000")).empty());
    CHECK((towers[0].U & ClopenSet::cylinder(f, -2, "11111")).empty());
    CHECK(all_ok(verify_tower(towers[0], nullptr, false)));
  }

  TEST_CASE("a corrupted tower fails disjointness") {
    System g = golden_mean();
    auto towers = build_towers(g, TowerParams::from({2, 3}, {2, 4}));
    MarkerTower bad = towers[0];
    bad.U = bad.U | ClopenSet::cylinder(g, -2, "00000");
    bool disjoint_failed = false;
    for (auto& c : verify_tower(bad, nullptr, false))
      if (c.invariant == "disjointness" && !c.ok) {
        disjoint_failed = true;
        CHECK_FALSE(c.detail.empty());
      }
    CHECK(disjoint_failed);
  }

  TEST_CASE("serialized towers read back") {
    System g = golden_mean();
    auto towers = build_towers(g, TowerParams::from({2, 3}, {2, 4}));
    auto sets = parse_tower_sets(g, serialize_towers(towers));
    REQUIRE(sets.size() == towers.size());
    for (size_t k = 0; k < sets.size(); ++k) CHECK(sets[k] == towers[k].U);
  }

  TEST_CASE("pointwise marker times satisfy the tower invariants") {
    // the oracle runs its own key-ordered greedy, so it is checked against
    // the invariants rather than against the clopen U sets
    System g = golden_mean();
    TowerParams tp = TowerParams::from({2, 3}, {2, 4});
    auto towers = build_towers(g, tp);
    Schedule s;
    s.K = 2;
    s.alpha = Rational(1, 5);
    s.m = {0, 1};
    s.n = tp.n;
    s.nprime = tp.nprime;
    s.r = tp.r;
    PointRep x = parse_point("left: 0100 core: 1001010001001@-20 right: 00101");
    MarkerOracle o(g, s, x);
    for (int k = 1; k <= 2; ++k) {
      int n = tp.n[(size_t)k - 1], np = tp.nprime[(size_t)k - 1];
      for (int64_t t = -60; t <= 60; ++t) {
        CHECK(o.pertilde(k, t) == towers[(size_t)k - 1].per.contains(x, t));
        if (o.U(k, t))
          for (int64_t d = 1; d < n; ++d) CHECK_FALSE(o.U(k, t + d));
        bool near = false;
        for (int64_t d = -np + 1; d < np; ++d) near = near || o.U(k, t + d);
        CHECK(near == o.hull(k, t));
        if (!near) CHECK(o.pertilde(k, t));
        if (k == 2 && o.U(2, t)) CHECK(o.U(1, t));
      }
    }
  }

  TEST_CASE("fully periodic points never return") {
    System g = golden_mean();
    Schedule s = build_schedule(g, 2, 2);
    MarkerOracle o(g, s, periodic_point("01"));
    for (int64_t t = -50; t <= 50; ++t) CHECK_FALSE(o.U(1, t));
    CHECK(o.local_orbit(1, 0) == "01");
    CHECK(o.local_period(1, 7) == 2);
  }
}
