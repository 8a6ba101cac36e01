// Acceptance criteria at desk scale. `acceptance <n>` runs one criterion,
// `acceptance` runs all of them; each prints a single PASS/FAIL line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "markcode/codec.hpp"
#include "markcode/metrics.hpp"
#include "markcode/sampling.hpp"
#include "markcode/towers.hpp"
#include "markcode/words.hpp"
#include "oracles.hpp"

using namespace mc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

constexpr int kSamples = 200;
constexpr int64_t kRadius = 200;
constexpr uint64_t kSeed = 20240601;

const Pipeline& golden() {
  static auto p = build_pipeline(golden_mean(), {});
  return *p;
}

const std::vector<PointRep>& samples() {
  static std::vector<PointRep> pts = [] {
    std::mt19937_64 rng(kSeed);
    std::vector<PointRep> v;
    for (int i = 0; i < kSamples; ++i) v.push_back(random_point(golden_mean(), rng));
    return v;
  }();
  return pts;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> truth(const PointRep& x, int m, int64_t a, int64_t b) {
  return oracle::cells(x.left, x.core, x.anchor, x.right, m, a, b);
}

Outcome roundtrip() {
  const Pipeline& p = golden();
  auto t0 = std::chrono::steady_clock::now();
  int ok = 0, capacity = 0, other = 0, mismatch = 0;
  std::string first;
  for (size_t i = 0; i < samples().size(); ++i) {
    const PointRep& x = samples()[i];
    try {
      bool same = true;
      for (int k = 1; k <= 2; ++k) {
        int64_t M = p.modulus(k);
        DecodeResult d = decode_k(encode_k(p, x, k, -kRadius - M, kRadius + M), p, k);
        for (int l = 1; l <= k; ++l) {
          auto want = truth(x, p.schedule.m[(size_t)l - 1], -kRadius, kRadius);
          auto& got = d.itineraries[(size_t)l - 1];
          for (int64_t t = -kRadius; t <= kRadius && same; ++t) same = got[(size_t)(t - d.a)] == want[(size_t)(t + kRadius)];
        }
      }
      if (same) ++ok;
      else {
        ++mismatch;
        if (first.empty()) first = "sample " + std::to_string(i) + ": itineraries differ";
      }
    } catch (const CapacityError& e) {
      ++capacity;
      if (first.empty()) first = "sample " + std::to_string(i) + ": " + e.what();
    } catch (const std::exception& e) {
      ++other;
      if (first.empty()) first = "sample " + std::to_string(i) + ": " + e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream out;
  out << ok << "/" << kSamples << " exact, " << capacity << " capacity errors, " << mismatch << " mismatches, " << other
      << " other errors, " << secs << " s";
  if (!first.empty()) out << "; first: " << first;
  return {ok == kSamples && secs < 60, out.str()};
}

Outcome equivariance() {
  const Pipeline& p = golden();
  int ok = 0, capacity = 0, differ = 0;
  std::string first;
  for (size_t i = 0; i < samples().size(); ++i) {
    const PointRep& x = samples()[i];
    PointRep tx = shifted(x, 1);
    try {
      bool same = true;
      for (int k = 1; k <= 2 && same; ++k) same = encode_k(p, tx, k, -kRadius, kRadius).syms == encode_k(p, x, k, -kRadius + 1, kRadius + 1).syms;
      same = same && encode_limit(p, tx, -kRadius, kRadius).syms == encode_limit(p, x, -kRadius + 1, kRadius + 1).syms;
      if (same) ++ok;
      else {
        ++differ;
        if (first.empty()) first = "sample " + std::to_string(i) + " differs";
      }
    } catch (const std::exception& e) {
      ++capacity;
      if (first.empty()) first = "sample " + std::to_string(i) + ": " + e.what();
    }
  }
  std::ostringstream out;
  out << ok << "/" << kSamples << " byte-exact at scales 1, 2 and the limit, " << differ << " differ, " << capacity
      << " could not be encoded";
  if (!first.empty()) out << "; first: " << first;
  return {ok == kSamples, out.str()};
}

template <class T>
std::pair<int, std::string> tower_failures(const std::vector<T>& towers, bool aperiodic, std::set<std::string>& seen) {
  int bad = 0;
  std::string first;
  for (size_t k = 0; k < towers.size(); ++k)
    for (auto& c : verify_tower(towers[k], k ? &towers[k - 1] : nullptr, aperiodic)) {
      seen.insert(c.invariant);
      if (!c.ok) {
        ++bad;
        if (first.empty()) first = "scale " + std::to_string(c.scale) + " " + c.invariant + ": " + c.detail;
      }
    }
  return {bad, first};
}

Outcome towers() {
  std::set<std::string> seen;
  System g = golden_mean();
  auto gt = build_towers(g, TowerParams::from({2, 3}, {2, 4}));
  auto [gb, gf] = tower_failures(gt, false, seen);
  System o = make_odometer(std::vector<int>(8, 2));
  auto ot = build_odometer_towers(o, TowerParams::from({2, 4, 8}, {0, 0, 0}));
  auto [ob, of] = tower_failures(ot, true, seen);
  bool all = seen.count("disjointness") && seen.count("covering") && seen.count("nesting");
  std::ostringstream out;
  out << "golden mean k<=2: " << gb << " violations; dyadic odometer k<=3: " << ob << " violations; invariants checked:";
  for (auto& s : seen) out << " " << s;
  if (!gf.empty()) out << "; " << gf;
  if (!of.empty()) out << "; " << of;
  return {gb == 0 && ob == 0 && all && gt.size() == 2 && ot.size() == 3, out.str()};
}

Outcome injectivity() {
  const Pipeline& p = golden();
  const int64_t R = 4 * p.schedule.n[0];
  std::vector<PointRep> pop = samples();
  for (int n = 1; n <= 12; ++n)
    for (auto& w : oracle::orbits2(n, {"11"})) pop.push_back(periodic_point(w));
  std::map<std::string, std::string> cell_of;
  int64_t windows = 0, violations = 0, skipped = 0;
  std::string first;
  for (auto& x : pop) {
    SymbolStream s;
    try {
      s = encode_k(p, x, 1, -kRadius - R, kRadius + R);
    } catch (const std::exception&) {
      ++skipped;
      continue;
    }
    auto cells = truth(x, p.schedule.m[0], -kRadius, kRadius);
    for (int64_t t = -kRadius; t <= kRadius; ++t) {
      ++windows;
      std::string w = s.syms.substr((size_t)(t - R - s.a), (size_t)(2 * R + 1));
      auto [it, fresh] = cell_of.emplace(w, cells[(size_t)(t + kRadius)]);
      if (!fresh && it->second != cells[(size_t)(t + kRadius)]) {
        ++violations;
        if (first.empty()) first = "window at t=" + std::to_string(t) + " maps to two cells";
      }
    }
  }
  std::ostringstream out;
  out << windows << " stream windows of radius " << R << " (" << cell_of.size() << " distinct) over " << pop.size()
      << " points, " << violations << " violations, " << skipped << " points not encodable";
  if (!first.empty()) out << "; " << first;
  return {violations == 0 && skipped == 0, out.str()};
}

Outcome periodic_code() {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out;
  bool pass = true;
  for (int n1 : {9, 16}) {
    PeriodicCode pc(golden_mean(), 2, n1);
    std::set<std::string> want;
    for (int n = 1; n <= n1; ++n)
      for (auto& w : oracle::orbits2(n, {"11"})) want.insert(w);
    bool same_orbits = std::set<std::string>(pc.orbits().begin(), pc.orbits().end()) == want;
    std::map<std::string, std::pair<std::string, int>> seen;
    int64_t clashes = 0, lookups_wrong = 0, windows = 0;
    for (size_t i = 0; i < pc.orbits().size(); ++i) {
      const std::string& c = pc.code_of(pc.orbits()[i]);
      std::string rep;
      while ((int)rep.size() < n1 + (int)c.size()) rep += c;
      for (int j = 0; j < (int)c.size(); ++j) {
        ++windows;
        std::string w = rep.substr((size_t)j, (size_t)n1);
        auto [it, fresh] = seen.emplace(w, std::make_pair(pc.orbits()[i], j));
        if (!fresh) ++clashes;
        auto hit = pc.lookup(w);
        if (!hit || hit->first != (int)i || hit->second != j) ++lookups_wrong;
      }
    }
    pass = pass && same_orbits && clashes == 0 && lookups_wrong == 0;
    out << "n1=" << n1 << ": " << pc.orbits().size() << " orbits" << (same_orbits ? "" : " (orbit set differs)") << ", "
        << windows << " phase windows, " << clashes << " collisions; ";
  }
  int bound_bad = 0;
  for (int n = 1; n <= 16; ++n) {
    // sum_{l<n} K^l < K^n / (K - 1), cleared of the denominator
    const int64_t K = 2;
    int64_t sum = 0, pw = 1;
    for (int l = 0; l < n; ++l, pw *= K) sum += pw;
    if (!(sum * (K - 1) < pw)) ++bound_bad;
  }
  double secs = seconds_since(t0);
  pass = pass && bound_bad == 0 && secs < 30;
  out << "shape bound violations for n<=16: " << bound_bad << ", " << secs << " s";
  return {pass, out.str()};
}

Outcome dN_convergence() {
  const Pipeline& p = golden();
  Rational worst[2] = {Rational(0), Rational(0)};
  int capacity = 0, inexact = 0;
  std::string first;
  for (size_t i = 0; i < samples().size(); ++i) {
    PointRep x = normalized(samples()[i]);
    int64_t R = std::max(std::abs(x.core_begin()), std::abs(x.core_end())) + p.modulus(2) + 200;
    try {
      MarkerOracle o(p.system, p.schedule, x);
      Layout L(o, *p.codes);
      PointRep X = stream_point(encode_limit(L, -R, R));
      for (int k = 1; k <= 2; ++k) {
        PointRep Xk = stream_point(encode_k(L, k, -R, R));
        int64_t N = (int64_t)p.schedule.n[(size_t)k - 1] * p.schedule.n[(size_t)k - 1];
        MetricValue v = dN_distance(Xk, X, N, R);
        if (!v.exact) ++inexact;
        if (worst[k - 1] < v.value) worst[k - 1] = v.value;
      }
    } catch (const std::exception& e) {
      ++capacity;
      if (first.empty()) first = "sample " + std::to_string(i) + ": " + e.what();
    }
  }
  Rational b1 = Rational(3) * p.schedule.alpha / Rational(2), b2 = Rational(3) * p.schedule.alpha / Rational(4);
  std::ostringstream out;
  out << "max d_N at N=n_1^2: " << worst[0].to_double() << " (bound " << b1.to_double() << "), at N=n_2^2: "
      << worst[1].to_double() << " (bound " << b2.to_double() << "); " << capacity << " samples could not be encoded, "
      << inexact << " values not exact";
  if (!first.empty()) out << "; first: " << first;
  return {worst[0] <= b1 && worst[1] <= b2 && capacity == 0 && inexact == 0, out.str()};
}

Outcome metric_laws() {
  std::mt19937_64 rng(kSeed + 7);
  System g = golden_mean();
  SampleSpec spec;
  spec.core_max = 120;
  spec.period_max = 12;
  spec.anchor_min = -100;
  int64_t mono_bad = 0, pseudo_bad = 0, triples = 0;
  for (int i = 0; i < 1000; ++i) {
    PointRep x = random_point(g, rng, spec), y = random_point(g, rng, spec);
    Rational prev(2);
    for (int64_t N = 1; N <= 256; N *= 2) {
      MetricValue v = dN_distance(x, y, N, 1024);
      if (!v.exact || prev < v.value) ++mono_bad;
      prev = v.value;
    }
    if (i % 3 == 0) {
      PointRep z = random_point(g, rng, spec);
      ++triples;
      auto d = [](const PointRep& a, const PointRep& b) { return besicovitch_estimate(a, b, 1024); };
      auto xy = d(x, y), yx = d(y, x), yz = d(y, z), xz = d(x, z), xx = d(x, x);
      bool exact = xy.exact && yx.exact && yz.exact && xz.exact && xx.exact;
      if (!exact || !(xy.value == yx.value) || xz.value > xy.value + yz.value || !(xx.value == Rational(0)) || xy.value < Rational(0))
        ++pseudo_bad;
    }
  }
  std::ostringstream out;
  out << "1000 pairs x 9 radii: " << mono_bad << " monotonicity violations; " << triples << " triples: " << pseudo_bad
      << " pseudometric violations";
  return {mono_bad == 0 && pseudo_bad == 0, out.str()};
}

Outcome counting() {
  System g = golden_mean(), full = full_shift(2);
  std::vector<std::vector<long long>> A = {{1, 1}, {1, 0}};
  int bad = 0;
  std::string first;
  auto note = [&](const std::string& s) {
    ++bad;
    if (first.empty()) first = s;
  };
  for (int n = 1; n <= 20; ++n) {
    // words of length n are paths with n - 1 steps: sum of the entries of A^(n-1)
    long long paths = 0;
    for (int i = 0; i < 2; ++i) {
      std::vector<long long> row = {i == 0, i == 1};
      for (int s = 1; s < n; ++s) row = {row[0] * A[0][0] + row[1] * A[1][0], row[0] * A[0][1] + row[1] * A[1][1]};
      paths += row[0] + row[1];
    }
    auto words = enumerate_words(g, n);
    if ((long long)words.size() != paths || words.size() != oracle::fibonacci(n + 2)) note("word count n=" + std::to_string(n));
  }
  for (int n = 1; n <= 12; ++n) {
    long long tr = oracle::trace_power(A, n);
    if (enumerate_periodic(g, n).fixed != (i128)tr || fix_count_trace(g, n) != (i128)tr) note("Fix count n=" + std::to_string(n));
  }
  for (int n = 1; n <= 10; ++n)
    if (per_growth_in_cell(full, 0, n).value != 0.0) note("per_growth n=" + std::to_string(n));
  return {bad == 0, bad == 0 ? "words n<=20, Fix n<=12, per_growth n<=10 all exact" : std::to_string(bad) + " mismatches; first: " + first};
}

Outcome schedule() {
  System g = golden_mean();
  Schedule s = build_schedule(g, 2, 2);
  auto checks = verify_schedule(g, s);
  std::set<std::string> families;
  int bad = 0;
  std::string first;
  for (auto& c : checks) {
    families.insert(c.family);
    if (!c.ok) {
      ++bad;
      if (first.empty()) first = c.family + " scale " + std::to_string(c.scale) + ": " + c.detail;
    }
  }
  bool three = families.count("capacity") && families.count("conditional") && families.count("periodic-growth");
  bool rejected = false;
  try {
    build_schedule(full_shift(2), 2, 2);
  } catch (const ScheduleError&) {
    rejected = true;
  }
  std::ostringstream out;
  out << "n=[" << s.n[0] << "," << s.n[1] << "], " << checks.size() << " checks over " << families.size() << " families, "
      << bad << " violations; full 2-shift " << (rejected ? "rejected" : "accepted");
  if (!first.empty()) out << "; " << first;
  return {bad == 0 && three && rejected, out.str()};
}

Outcome appendix() {
  System full = full_shift(2);
  auto f = appendix_fullness_check(full, 2, 12);
  int targets = 0, bad = 0;
  for (int n = 0; n <= 5; ++n) {
    int len = 2 * n + 1;
    for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
      std::string w;
      for (int i = len - 1; i >= 0; --i) w += ((v >> i) & 1) ? '1' : '0';
      ++targets;
      auto x = appendix_witness(full, w);
      bool ok = x.has_value() && valid_point(full, *x);
      for (int64_t i = -n; ok && i <= n; ++i) ok = coordinate(*x, i) == w[(size_t)(i + n)];
      if (!ok) ++bad;
    }
  }
  auto g = appendix_fullness_check(golden_mean(), 2, 12);
  std::ostringstream out;
  out << "full 2-shift: " << (f.full ? "full" : "not full") << ", " << targets << " targets, " << bad
      << " without a valid witness; golden mean rejected at n=" << g.failed_at << " (" << to_string(g.count) << " words)";
  return {f.full && bad == 0 && !g.full && g.failed_at == 2 && g.count == 3, out.str()};
}

Outcome pushforward() {
  const Pipeline& p = golden();
  int orbits = 0, bad = 0;
  std::string first;
  for (int n = 1; n <= 6; ++n)
    for (auto& w : oracle::orbits2(n, {"11"})) {
      ++orbits;
      PointRep x = periodic_point(w);
      SymbolStream s = encode_limit(p, x, -60, 60);
      bool ok = oracle::least_period(s.syms) == n;
      for (int L = 1; L <= 4 && ok; ++L) {
        EmpiricalMeasure mu = empirical_measure(s, L, n, 0);
        // pushforward table: one L-word per phase of the orbit, mass 1/n each
        std::map<std::string, Rational> table;
        for (int j = 0; j < n; ++j) {
          std::string word = encode_limit(p, shifted(x, j), 0, L - 1).syms;
          auto it = table.find(word);
          table[word] = (it == table.end() ? Rational(0) : it->second) + Rational(1, n);
        }
        ok = table.size() == mu.counts.size();
        for (auto& [word, mass] : table) ok = ok && mu.freq(word) == mass;
      }
      if (!ok) {
        ++bad;
        if (first.empty()) first = "orbit " + w;
      }
    }
  std::ostringstream out;
  out << orbits << " orbits of period <= 6, " << bad << " with a mismatched pushforward or period";
  if (!first.empty()) out << "; first: " << first;
  return {bad == 0, out.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> c = {
      {"round-trip", roundtrip},         {"equivariance", equivariance}, {"marker towers", towers},
      {"eps-injectivity", injectivity},  {"periodic code", periodic_code}, {"d_N convergence", dN_convergence},
      {"metric laws", metric_laws},      {"counting oracles", counting},  {"schedule soundness", schedule},
      {"fullness check", appendix},      {"measure pushforward", pushforward},
  };
  return c;
}

bool run(size_t i) {
  Outcome o;
  try {
    o = criteria()[i].second();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << i + 1 << " " << criteria()[i].first << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
            << ")" << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    size_t i = (size_t)std::atoi(argv[1]);
    if (i < 1 || i > criteria().size()) {
      std::cerr << "usage: acceptance [1.." << criteria().size() << "]\n";
      return 2;
    }
    return run(i - 1) ? 0 : 1;
  }
  bool all = true;
  for (size_t i = 0; i < criteria().size(); ++i) all = run(i) && all;
  return all ? 0 : 1;
}
