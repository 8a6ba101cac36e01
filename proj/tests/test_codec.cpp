#include <doctest.h>

#include <random>

#include "markcode/codec.hpp"
#include "markcode/words.hpp"
#include "oracles.hpp"

using namespace mc;

namespace {

const Pipeline& golden() {
  static auto p = build_pipeline(golden_mean(), {});
  return *p;
}

const char* kSample = "left: 0100 core: 1001010001001@-20 right: 00101";

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("first codebook") {
    const Pipeline& p = golden();
    const FirstCodebook& fc = p.codes->first;
    CHECK(fc.size(9) == 89);
    CHECK(fc.length(9) == 8);
    CHECK(fc.encode("000000000") == "00000000");
    auto words = oracle::words2(9, {"11"});
    std::set<std::string> codes;
    for (size_t i = 0; i < words.size(); ++i) {
      std::string c = fc.encode(words[i]);
      CHECK(c.size() == 8);
      CHECK(from_kary(c, 2) == (i128)i);
      CHECK(fc.decode(c, 9) == words[i]);
      codes.insert(c);
    }
    CHECK(codes.size() == 89);
    CHECK_THROWS(fc.decode("11111111", 9));
  }

  TEST_CASE("conditional codebook") {
    System g = golden_mean();
    Schedule toy;
    toy.K = 2;
    toy.alpha = Rational(3);
    toy.m = {0, 1};
    toy.n = {3, 3};
    toy.nprime = {3, 3};
    toy.r = {3, 3};
    ConditionalCodebook cb(g, toy, 2);
    CHECK(cb.length(3) == 2);
    auto refs = cb.refinements("000");
    REQUIRE(refs.size() == 4);
    std::vector<std::string> got;
    for (auto& [l, r] : refs) {
      got.push_back(cb.encode("000", l, r, 3));
      CHECK(cb.decode("000", got.back(), 3) == std::make_pair(l, r));
    }
    CHECK(got == std::vector<std::string>{"00", "01", "10", "11"});
    CHECK_THROWS(cb.refinements("11"));

    Schedule same = toy;
    same.m = {1, 1};
    ConditionalCodebook trivial(g, same, 2);
    CHECK(trivial.refinements("010").size() == 1);
  }

  TEST_CASE("periodic code") {
    const PeriodicCode& pc = golden().codes->periodic;
    CHECK(pc.code_of("0") == "0");
    CHECK(pc.code_of("01") == "01");
    size_t want = 0;
    for (int n = 1; n <= 9; ++n) want += oracle::orbits2(n, {"11"}).size();
    CHECK(pc.orbits().size() == want);
    CHECK(pc.injective());
    std::set<std::string> necklaces;
    for (auto& o : pc.orbits()) {
      const std::string& c = pc.code_of(o);
      CHECK(c.size() == o.size());
      CHECK(oracle::least_period(c + c) == (int)c.size());
      necklaces.insert(oracle::min_rotation(c));
    }
    CHECK(necklaces.size() == pc.orbits().size());
    CHECK_FALSE(has_shorter_period_prefix("0001", 9));

    PeriodicCode full(full_shift(2), 3, 6);
    CHECK(full.code_of("001") != full.code_of("011"));
    CHECK(full.injective());
  }

  TEST_CASE("stream serialization") {
    auto s = encode_limit(golden(), parse_point(kSample), -300, 300);
    CHECK(serialize_stream(s).rfind("[-300,300]", 0) == 0);
    SymbolStream back = parse_stream(serialize_stream(s), 2);
    CHECK(back.a == s.a);
    CHECK(back.syms == s.syms);
    CHECK_THROWS_AS(parse_stream("[0,2]\nB1 7 FR\n", 2), MalformedStream);
    CHECK_THROWS_AS(parse_stream("[0,5]\nB1 1 FR\n", 2), MalformedStream);
  }

  TEST_CASE("resolution scales") {
    const Pipeline& p = golden();
    auto s = encode_limit(p, parse_point(kSample), -300, 300);
    for (int64_t i = 0; i < s.size(); ++i) {
      if (s.syms[(size_t)i] == sym::UN) CHECK(s.res[(size_t)i] == p.kmax() + 1);
      else CHECK(s.res[(size_t)i] <= p.kmax());
    }
  }

  TEST_CASE("periodic points encode to their code word") {
    const Pipeline& p = golden();
    for (std::string w : {"0", "01", "001", "0001", "00101"}) {
      PointRep x = periodic_point(w);
      auto s = encode_k(p, x, 1, -200, 200);
      CHECK(s.syms.find(sym::B1) == std::string::npos);
      const std::string& c = p.codes->periodic.code_of(least_rotation(w));
      CHECK(oracle::least_period(s.syms) == (int)c.size());
      CHECK(oracle::min_rotation(s.syms.substr(0, c.size())) == oracle::min_rotation(c));
      auto d = decode_k(s, p, 1);
      REQUIRE(d.orbits.size() == 1);
      CHECK(d.orbits[0] == least_rotation(w));
    }
  }

  TEST_CASE("decode recovers the itineraries") {
    const Pipeline& p = golden();
    PointRep x = parse_point(kSample);
    for (int k = 1; k <= 2; ++k) {
      int64_t M = p.modulus(k);
      auto s = encode_k(p, x, k, -100 - M, 100 + M);
      auto d = decode_k(s, p, k);
      CHECK(d.a <= -100);
      CHECK(d.b >= 100);
      for (int l = 1; l <= k; ++l)
        CHECK(d.itineraries[(size_t)l - 1] ==
              oracle::cells(x.left, x.core, x.anchor, x.right, p.schedule.m[(size_t)l - 1], d.a, d.b));
    }
  }

  TEST_CASE("malformed and truncated streams") {
    const Pipeline& p = golden();
    std::mt19937_64 rng(3);
    const std::string soup = "|#[]%.?01";
    for (int trial = 0; trial < 20; ++trial) {
      SymbolStream s;
      s.a = -2000;
      s.b = 2000;
      for (int64_t i = s.a; i <= s.b; ++i) s.syms += soup[rng() % soup.size()];
      s.res.assign(s.syms.size(), 1);
      CHECK_THROWS_AS(decode_k(s, p, 1), MalformedStream);
    }
    auto shortish = encode_k(p, parse_point(kSample), 1, -10, 10);
    CHECK_THROWS_AS(decode_k(shortish, p, 1), SpecError);
    CHECK_THROWS_AS(invert(shortish, p, 1), SpecError);
  }

  TEST_CASE("invert separates V_1 cells and nothing more") {
    const Pipeline& p = golden();
    int64_t M = p.modulus(1);
    PointRep x = parse_point(kSample);
    PointRep y = x;
    y.left = "0";  // same around 0, different before the core
    auto ix = invert(encode_k(p, x, 1, -M, M), p, 1), iy = invert(encode_k(p, y, 1, -M, M), p, 1);
    CHECK(ix == iy);
    CHECK(ix == window(x, 0, 0));
    PointRep z = periodic_point("01"), w = periodic_point("10");
    CHECK(invert(encode_k(p, z, 1, -M, M), p, 1) != invert(encode_k(p, w, 1, -M, M), p, 1));
  }

  TEST_CASE("shift equivariance on a sample") {
    const Pipeline& p = golden();
    PointRep x = parse_point(kSample), tx = shifted(x, 1);
    for (int k = 1; k <= 2; ++k) CHECK(encode_k(p, tx, k, -150, 150).syms == encode_k(p, x, k, -149, 151).syms);
    CHECK(encode_limit(p, tx, -150, 150).syms == encode_limit(p, x, -149, 151).syms);
  }

  TEST_CASE("pipelines survive a save and load") {
    std::string dir = "pipeline_roundtrip_tmp";
    save_pipeline(golden(), dir);
    auto q = load_pipeline(dir);
    CHECK(q->schedule.n == golden().schedule.n);
    CHECK(q->codes->periodic.str() == golden().codes->periodic.str());
    PointRep x = parse_point(kSample);
    CHECK(encode_limit(*q, x, -100, 100).syms == encode_limit(golden(), x, -100, 100).syms);
  }
}
