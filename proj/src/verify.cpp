#include "markcode/verify.hpp"

#include <random>
#include <sstream>

#include "markcode/codec.hpp"
#include "markcode/metrics.hpp"
#include "markcode/sampling.hpp"
#include "markcode/words.hpp"

namespace mc {

namespace {

void fail(SuiteResult& r, const std::string& why) {
  ++r.failed;
  if (r.ok) r.detail = why;
  r.ok = false;
}

SuiteResult schedule_suite(const Pipeline& p) {
  SuiteResult r("schedule");
  for (auto& c : verify_schedule(p.system, p.schedule, p.config.schedule)) {
    ++r.count;
    if (!c.ok) fail(r, c.family + " scale " + std::to_string(c.scale) + ": " + c.detail);
  }
  return r;
}

SuiteResult periodic_suite(const Pipeline& p) {
  SuiteResult r("periodic_code");
  const PeriodicCode& pc = p.codes->periodic;
  if (!pc.injective()) fail(r, "prefix map not injective");
  for (size_t i = 0; i < pc.orbits().size(); ++i) {
    const std::string& w = pc.code_of(pc.orbits()[i]);
    std::string rep;
    while ((int)rep.size() < pc.n1() + (int)w.size()) rep += w;
    for (size_t j = 0; j < w.size(); ++j) {
      ++r.count;
      auto hit = pc.lookup(rep.substr(j, (size_t)pc.n1()));
      if (!hit || hit->first != (int)i || hit->second != (int)j) fail(r, "orbit " + pc.orbits()[i] + " phase " + std::to_string(j));
    }
  }
  return r;
}

SuiteResult capacity_suite(const Pipeline& p) {
  SuiteResult r("codebook_capacity");
  const Schedule& s = p.schedule;
  auto power = [&](int e) {
    i128 v = 1;
    for (int i = 0; i < e; ++i) v *= s.K;
    return v;
  };
  for (int n = s.n[0]; n < 2 * s.n[0]; ++n) {
    ++r.count;
    if (p.codes->first.size(n) > power(p.codes->first.length(n))) fail(r, "scale 1 length " + std::to_string(n));
  }
  for (int k = 2; k <= p.kmax(); ++k) {
    ++r.count;
    int n = s.n[(size_t)k - 1];
    i128 c = conditional_count(p.system, s.m[(size_t)k - 2], s.m[(size_t)k - 1], n);
    if (c > power(p.codes->cond[(size_t)k - 2].length(n))) fail(r, "scale " + std::to_string(k) + " length " + std::to_string(n));
  }
  return r;
}

std::vector<SuiteResult> tower_suites(const Pipeline& p) {
  std::vector<SuiteResult> out;
  auto add = [&](const std::vector<TowerCheck>& checks) {
    for (auto& c : checks) {
      SuiteResult* r = nullptr;
      for (auto& o : out)
        if (o.invariant == "tower_" + c.invariant) r = &o;
      if (!r) {
        out.push_back(SuiteResult("tower_" + c.invariant));
        r = &out.back();
      }
      ++r->count;
      if (!c.ok) fail(*r, "scale " + std::to_string(c.scale) + ": " + c.detail);
    }
  };
  for (size_t k = 0; k < p.towers.size(); ++k) add(verify_tower(p.towers[k], k ? &p.towers[k - 1] : nullptr, false));
  for (size_t k = 0; k < p.odo_towers.size(); ++k) add(verify_tower(p.odo_towers[k], k ? &p.odo_towers[k - 1] : nullptr, true));
  return out;
}

}  // namespace

std::vector<SuiteResult> run_verify(const Pipeline& p, const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  for (auto& t : tower_suites(p)) out.push_back(t);
  if (!p.codes) return out;
  out.push_back(schedule_suite(p));
  out.push_back(periodic_suite(p));
  out.push_back(capacity_suite(p));

  SuiteResult rt("roundtrip"), eq("equivariance"), mono("dN_nonincreasing"), pseudo("d_inf_pseudometric");
  SuiteResult ext("stream_extends"), dens("change_density");
  std::mt19937_64 rng(opt.seed);
  std::vector<PointRep> pts;
  for (int i = 0; i < opt.samples; ++i) pts.push_back(random_point(p.system, rng));
  int K = p.kmax();
  int64_t W = opt.radius, M = p.modulus(K);
  for (size_t i = 0; i < pts.size(); ++i) {
    const PointRep& x = pts[i];
    std::string id = "sample " + std::to_string(i);
    ++rt.count;
    ++eq.count;
    try {
      SymbolStream s = encode_k(p, x, K, -W - M, W + M);
      DecodeResult d = decode_k(s, p, K);
      bool same = true;
      for (int l = 1; l <= K; ++l) {
        auto truth = itinerary(x, p.schedule.m[(size_t)l - 1], -W, W);
        for (int64_t t = -W; t <= W && same; ++t) same = d.itineraries[(size_t)l - 1][(size_t)(t - d.a)] == truth[(size_t)(t + W)];
      }
      if (!same) fail(rt, id + ": itineraries differ");
    } catch (const std::exception& e) {
      fail(rt, id + ": " + e.what());
    }
    try {
      PointRep tx = shifted(x, 1);
      for (int k = 1; k <= K; ++k)
        if (encode_k(p, tx, k, -W, W).syms != encode_k(p, x, k, -W + 1, W + 1).syms) {
          fail(eq, id + " scale " + std::to_string(k));
          break;
        }
    } catch (const std::exception& e) {
      fail(eq, id + ": " + e.what());
    }
    // a decodable window is the window of some encoded point: re-encode the
    // decoded letters (closed off by 0 tails) and compare away from the edges
    for (int k = 1; k <= K; ++k) {
      ++ext.count;
      try {
        int64_t Mk = p.modulus(k);
        SymbolStream s = encode_k(p, x, k, -W - 2 * Mk, W + 2 * Mk);
        DecodeResult d = decode_k(s, p, k);
        PointRep y;
        y.left = y.right = "0";
        y.core = d.letters;
        y.anchor = d.a - p.schedule.m[(size_t)k - 1];
        if (!valid_point(p.system, y)) fail(ext, id + " scale " + std::to_string(k) + ": decoded letters do not close off");
        else if (encode_k(p, y, k, -W, W).syms != s.slice(-W, W).syms) fail(ext, id + " scale " + std::to_string(k));
      } catch (const std::exception& e) {
        fail(ext, id + " scale " + std::to_string(k) + ": " + e.what());
      }
    }
    // positions rewritten between consecutive scales, on windows of length >= n_k^2
    for (int k = 1; k < K; ++k) {
      int64_t n = p.schedule.n[(size_t)k - 1];
      for (int64_t len : {n * n, 4 * n * n, 16 * n * n}) {
        ++dens.count;
        try {
          int64_t a = -len / 2, b = a + len - 1;
          std::string u = encode_k(p, x, k, a, b).syms, v = encode_k(p, x, k + 1, a, b).syms;
          int64_t c = 0;
          for (size_t j = 0; j < u.size(); ++j) c += u[j] != v[j];
          Rational frac(c, len), a2k = p.schedule.alpha / Rational((i128)1 << k);
          Rational bound = a2k + Rational(2, n) + Rational(16 * n, len);
          Rational count_bound = a2k * Rational(len) + Rational(len, n) + Rational(8 * n);
          if (frac > bound || Rational(c) > count_bound)
            fail(dens, id + " scale " + std::to_string(k) + " length " + std::to_string(len) + ": " + std::to_string(c) + " changed");
        } catch (const std::exception& e) {
          fail(dens, id + " scale " + std::to_string(k) + ": " + e.what());
        }
      }
    }
  }
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const PointRep &x = pts[i], &y = pts[i + 1];
    Rational prev(2);
    for (int64_t N = 1; N <= 256; N *= 2) {
      ++mono.count;
      Rational v = dN_distance(x, y, N, 4096).value;
      if (prev < v) fail(mono, "samples " + std::to_string(i) + "," + std::to_string(i + 1) + " at N=" + std::to_string(N));
      prev = v;
    }
    if (i + 2 < pts.size()) {
      const PointRep& z = pts[i + 2];
      ++pseudo.count;
      Rational xy = besicovitch_estimate(x, y, 4096).value, yx = besicovitch_estimate(y, x, 4096).value;
      Rational yz = besicovitch_estimate(y, z, 4096).value, xz = besicovitch_estimate(x, z, 4096).value;
      Rational xx = besicovitch_estimate(x, x, 4096).value;
      Rational sh = besicovitch_estimate(shifted(x, 1), shifted(y, 1), 4096).value;
      if (!(xy == yx) || xz > xy + yz || !(xx == Rational(0)) || !(sh == xy)) fail(pseudo, "triple at sample " + std::to_string(i));
    }
  }
  for (auto* r : {&rt, &eq, &ext, &dens, &mono, &pseudo}) {
    if (r->count == 0) r->detail = "vacuous";
    out.push_back(*r);
  }
  return out;
}

std::string format_suites(const std::vector<SuiteResult>& r) {
  std::ostringstream out;
  out << "invariant\tstatus\tcases\tfailed\tdetail\n";
  for (auto& s : r) out << s.invariant << '\t' << (s.ok ? "pass" : "fail") << '\t' << s.count << '\t' << s.failed << '\t' << s.detail << '\n';
  return out.str();
}

}  // namespace mc
