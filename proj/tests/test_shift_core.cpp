#include <doctest.h>

#include "markcode/clopen.hpp"
#include "markcode/odometer.hpp"
#include "markcode/point.hpp"
#include "markcode/words.hpp"
#include "oracles.hpp"

using namespace mc;

TEST_SUITE("shift-core") {
  TEST_CASE("systems parse and reject empty subshifts") {
    System g = parse_system("kind: sft\nalphabet: 2\nforbidden: [11]\n");
    CHECK(g.kind == Kind::Sft);
    auto A = transfer_matrix_int(g);
    // two states once the essential graph is trimmed; entries of [[1,1],[1,0]]
    CHECK(A.rows() == 2);
    CHECK(A.sum() == 3);

    System full = parse_system("kind: sft\nalphabet: 2\nforbidden: []\n");
    CHECK(count_words(full, 5) == 32);

    CHECK_THROWS_AS(parse_system("kind: sft\nalphabet: 2\nforbidden: [0, 1]\n"), SpecError);
    CHECK_THROWS_AS(parse_system("kind: sft\nalphabet: 2\nmatrix: [[1,1,0],[1,0,1],[0,1,1]]\n"), SpecError);
    CHECK_THROWS_AS(parse_system("kind sft"), SpecError);

    System round = parse_system(serialize_system(g));
    CHECK(round.forbidden == g.forbidden);
  }

  TEST_CASE("coordinates unfold the periodic extension") {
    CHECK(coordinate(periodic_point("0"), -7) == '0');
    CHECK(coordinate(periodic_point("01"), 3) == '1');
    PointRep x = parse_point("left: 0 core: 010@0 right: 01");
    CHECK(coordinate(x, 5) == '0');
    for (int64_t i = -30; i <= 30; ++i) CHECK(coordinate(x, i) == oracle::coord("0", "010", 0, "01", i));
    CHECK(parse_point(serialize_point(x)) == x);
  }

  TEST_CASE("shift moves coordinates by one") {
    PointRep x = parse_point("left: 0100 core: 1001010001001@-20 right: 00101");
    PointRep y = shifted(x, 7);
    for (int64_t i = -80; i <= 80; ++i) CHECK(coordinate(y, i) == coordinate(x, i + 7));
    PointRep n = normalized(x);
    for (int64_t i = -80; i <= 80; ++i) CHECK(coordinate(n, i) == coordinate(x, i));
  }

  TEST_CASE("itineraries read centred windows") {
    auto a = itinerary(periodic_point("01"), 0, 0, 3);
    CHECK(a == std::vector<std::string>{"0", "1", "0", "1"});
    CHECK(itinerary(periodic_point("0"), 1, 0, 0) == std::vector<std::string>{"000"});
    PointRep x = parse_point("left: 0 core: 00100@-1 right: 0");
    CHECK(itinerary(x, 1, 0, 2) == std::vector<std::string>{"001", "010", "100"});
    PointRep z = parse_point("left: 0100 core: 1001010001001@-20 right: 00101");
    CHECK(itinerary(z, 3, -40, 40) == oracle::cells("0100", "1001010001001", -20, "00101", 3, -40, 40));
  }

  TEST_CASE("word counts follow the Fibonacci numbers") {
    System g = golden_mean();
    CHECK(enumerate_words(g, 2) == std::vector<std::string>{"00", "01", "10"});
    CHECK(count_words(g, 4) == 8);
    for (int n = 1; n <= 14; ++n) {
      CHECK(enumerate_words(g, n) == oracle::words2(n, {"11"}));
      CHECK(count_words(g, n) == (i128)oracle::fibonacci(n + 2));
    }
    WordCounter wc(g, 12);
    auto all = oracle::words2(12, {"11"});
    for (size_t i = 0; i < all.size(); ++i) {
      CHECK(wc.rank(all[i]) == (i128)i);
      CHECK(wc.unrank((i128)i, 12) == all[i]);
    }
    CHECK(wc.rank("0110") == -1);
  }

  TEST_CASE("periodic points of the golden mean") {
    System g = golden_mean();
    CHECK(enumerate_periodic(g, 1).fixed == 1);
    CHECK(enumerate_periodic(g, 2).fixed == 3);
    CHECK(enumerate_periodic(g, 4).fixed == 7);
    CHECK(least_period_points(g, 4) == 4);
    CHECK(least_period_points(g, 2) == 2);
    for (int n = 1; n <= 12; ++n) {
      auto pc = enumerate_periodic(g, n);
      CHECK(pc.fixed == (i128)oracle::fix_count2(n, {"11"}));
      auto want = oracle::orbits2(n, {"11"});
      CHECK(std::set<std::string>(pc.orbits.begin(), pc.orbits.end()) == want);
    }
  }

  TEST_CASE("Lyndon words and least periods") {
    CHECK(lyndon_words(2, 4) == std::vector<std::string>{"0001", "0011", "0111"});
    for (int n = 1; n <= 10; ++n) CHECK(lyndon_words(2, n).size() == oracle::orbits2(n, {}).size());
    CHECK(least_period("010010") == 3);
    CHECK(least_period("0000") == 1);
    CHECK(least_rotation("1001") == "0011");
    CHECK(primitive_root("010101") == "01");
  }

  TEST_CASE("clopen algebra on cylinders") {
    System full = full_shift(2);
    ClopenSet a = ClopenSet::cylinder(full, 0, "0"), b = ClopenSet::cylinder(full, 0, "1");
    CHECK((a | b) == ClopenSet::whole(full));
    CHECK((a & b).empty());

    ClopenSet s = a.shift(2);
    CHECK(s.contains(periodic_point("01"), 0));
    CHECK_FALSE(s.contains(periodic_point("01"), 1));

    System g = golden_mean();
    ClopenSet c = ClopenSet::cylinder(g, 0, "1").complement();
    // every admissible 3-word with centre 0
    CHECK(c.patterns_at(1) == std::vector<std::string>{"000", "001", "100", "101"});
    CHECK(c == ClopenSet::cylinder(g, 0, "0"));

    ClopenSet big = ClopenSet::cylinder(g, -2, "01") | ClopenSet::cylinder(g, 3, "10");
    PointRep x = parse_point("left: 0100 core: 1001010001001@-20 right: 00101");
    for (int64_t t = -40; t <= 40; ++t) {
      bool want = (coordinate(x, t - 2) == '0' && coordinate(x, t - 1) == '1') ||
                  (coordinate(x, t + 3) == '1' && coordinate(x, t + 4) == '0');
      CHECK(big.contains(x, t) == want);
      CHECK(big.complement().contains(x, t) == !want);
    }
  }

  TEST_CASE("width overflow is reported") {
    System g = golden_mean();
    int saved = ClopenSet::width_cap;
    ClopenSet::width_cap = 4;
    CHECK_THROWS_AS((void)(ClopenSet::cylinder(g, 0, "0") | ClopenSet::cylinder(g, 9, "0")), WidthOverflow);
    ClopenSet::width_cap = saved;
  }

  TEST_CASE("odometer clopen sets") {
    System o = make_odometer({2, 2, 2, 2});
    OdoClopen u = OdoClopen::prefix(o, {0});
    CHECK((u & u.shift(1)).empty());
    CHECK((u | u.shift(1)) == OdoClopen::whole(o));
    PointRep zero;
    zero.digits = {0, 0, 0, 0};
    for (int64_t t = 0; t < 16; ++t) CHECK(u.contains(zero, t) == (t % 2 == 0));
  }

  TEST_CASE("product coding stacks cells") {
    auto pc = product_coding(periodic_point("01"), {0, 1}, 0, 1);
    REQUIRE(pc.size() == 2);
    CHECK(pc[0] == std::vector<std::string>{"0", "101"});
    CHECK(pc[1] == std::vector<std::string>{"1", "010"});
    auto zero = product_coding(periodic_point("0"), {0}, -3, 3);
    for (auto& row : zero) CHECK(row == std::vector<std::string>{"0"});
    auto p = product_coding(periodic_point("01"), {0}, 0, 0), q = product_coding(periodic_point("10"), {0}, 0, 0);
    CHECK(p != q);
  }
}
