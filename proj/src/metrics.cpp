#include "markcode/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "markcode/words.hpp"

namespace mc {

namespace {

constexpr int64_t kMaxTailPeriod = 1 << 22;
constexpr int64_t kMaxScan = 1 << 26;

int64_t extent(const PointRep& x) { return std::max(std::abs(x.core_begin()), std::abs(x.core_end())) + 1; }

Rational rabs(const Rational& r) { return r.num < 0 ? Rational(-r.num, r.den) : r; }

// D(n) = #{|i| <= n : x_i != y_i}, filled incrementally
struct DisagreementCounter {
  const PointRep &x, &y;
  std::vector<int64_t> D;
  int64_t upto(int64_t n) {
    if (D.empty()) D.push_back(coordinate(x, 0) != coordinate(y, 0));
    while ((int64_t)D.size() <= n) {
      int64_t i = (int64_t)D.size();
      D.push_back(D.back() + (coordinate(x, i) != coordinate(y, i)) + (coordinate(x, -i) != coordinate(y, -i)));
    }
    return D[(size_t)n];
  }
};

struct TailShape {
  int64_t P = 0, L = 0;
  bool ok = false;
};

TailShape tail_shape(const PointRep& x, const PointRep& y) {
  TailShape t;
  t.P = std::max(extent(x), extent(y));
  int64_t ll = std::lcm((int64_t)x.left.size(), (int64_t)y.left.size());
  int64_t lr = std::lcm((int64_t)x.right.size(), (int64_t)y.right.size());
  t.L = ll > kMaxTailPeriod || lr > kMaxTailPeriod ? 0 : std::lcm(ll, lr);
  t.ok = t.L > 0 && t.L <= kMaxTailPeriod;
  return t;
}

// disagreement density of the right tails
Rational right_density(const PointRep& x, const PointRep& y) {
  int64_t P = std::max(extent(x), extent(y));
  int64_t L = std::lcm((int64_t)x.right.size(), (int64_t)y.right.size());
  int64_t c = 0;
  for (int64_t i = P; i < P + L; ++i) c += coordinate(x, i) != coordinate(y, i);
  return Rational(c, L);
}

bool better(int64_t d1, int64_t w1, int64_t d2, int64_t w2) { return (i128)d1 * w2 > (i128)d2 * w1; }

}  // namespace

double Dyadic::to_double() const { return zero() ? 0.0 : std::ldexp(1.0, (int)-std::min<int64_t>(k, 2000)); }
std::string Dyadic::str() const { return zero() ? "0" : "2^-" + std::to_string(k); }

Dyadic cantor_distance(const PointRep& x, const PointRep& y) {
  if (x.odometer() || y.odometer()) {
    size_t n = std::max(x.digits.size(), y.digits.size());
    for (size_t i = 0; i < n; ++i) {
      int a = i < x.digits.size() ? x.digits[i] : 0, b = i < y.digits.size() ? y.digits[i] : 0;
      if (a != b) return Dyadic{(int64_t)i};
    }
    return Dyadic{};
  }
  TailShape t = tail_shape(x, y);
  int64_t bound = t.P + (t.ok ? t.L : kMaxScan);
  for (int64_t i = 0; i <= bound; ++i)
    if (coordinate(x, i) != coordinate(y, i) || coordinate(x, -i) != coordinate(y, -i)) return Dyadic{i};
  return Dyadic{};
}

MetricValue dN_distance(const PointRep& x, const PointRep& y, int64_t N, int64_t H) {
  if (N < 0) throw SpecError("d_N needs N >= 0");
  DisagreementCounter dc{x, y, {}};
  TailShape t = tail_shape(x, y);
  MetricValue out;
  int64_t N0 = std::max(N, t.P);
  if (t.ok && N0 + 2 * t.L < kMaxScan) {
    // beyond P, D(n + L) = D(n) + C; along n0 + qL the ratio is monotone,
    // so the sup is a sampled value or the limit C / 2L
    int64_t bd = 0, bw = 1;
    for (int64_t n = N; n < N0 + t.L; ++n) {
      int64_t d = dc.upto(n);
      if (better(d, 2 * n + 1, bd, bw)) bd = d, bw = 2 * n + 1;
    }
    int64_t C = dc.upto(N0 + t.L) - dc.upto(N0);
    out.value = better(C, 2 * t.L, bd, bw) ? Rational(C, 2 * t.L) : Rational(bd, bw);
    out.exact = true;
    return out;
  }
  if (H < N) throw SpecError("d_N horizon below N");
  int64_t bd = 0, bw = 1;
  for (int64_t n = N; n <= H; ++n) {
    int64_t d = dc.upto(n);
    if (better(d, 2 * n + 1, bd, bw)) bd = d, bw = 2 * n + 1;
  }
  out.value = Rational(bd, bw);
  out.horizon = H;
  return out;
}

MetricValue besicovitch_estimate(const PointRep& x, const PointRep& y, int64_t H) {
  DisagreementCounter dc{x, y, {}};
  TailShape t = tail_shape(x, y);
  MetricValue out;
  if (t.ok && t.P + 2 * t.L < kMaxScan) {
    int64_t C = dc.upto(t.P + t.L) - dc.upto(t.P);
    out.value = Rational(C, 2 * t.L);
    out.exact = true;
    return out;
  }
  out.value = Rational(dc.upto(H), 2 * H + 1);
  out.horizon = H;
  return out;
}

MetricValue dN_distance(const SymbolStream& u, const SymbolStream& v, int64_t N) {
  int64_t H = std::min({-u.a, u.b, -v.a, v.b});
  if (H < N) throw SpecError("streams cover radius " + std::to_string(H) + ", below N = " + std::to_string(N));
  int64_t d = 0, bd = 0, bw = 1;
  for (int64_t n = 0; n <= H; ++n) {
    d += u.at(n) != v.at(n);
    if (n) d += u.at(-n) != v.at(-n);
    if (n >= N && better(d, 2 * n + 1, bd, bw)) bd = d, bw = 2 * n + 1;
  }
  return MetricValue{Rational(bd, bw), false, H};
}

PointRep stream_point(const SymbolStream& s, int64_t check) {
  if (s.size() < 2 * check) throw SpecError("stream window too short to certify periodic ends");
  std::string_view all(s.syms);
  int pl = least_period(all.substr(0, (size_t)check));
  int pr = least_period(all.substr((size_t)(s.size() - check)));
  if (2 * pl > check || 2 * pr > check)
    throw SpecError("stream ends are not periodic within " + std::to_string(check) + " symbols");
  PointRep x;
  x.left = s.syms.substr(0, (size_t)pl);
  x.anchor = s.a + pl;
  x.core = s.syms.substr((size_t)pl, (size_t)(s.size() - pl - pr));
  x.right = s.syms.substr((size_t)(s.size() - pr));
  return normalized(x);
}

Rational EmpiricalMeasure::freq(const std::string& w) const {
  if ((int)w.size() > L) throw SpecError("cylinder '" + w + "' is longer than the measure's word length");
  int64_t c = 0;
  for (auto it = counts.lower_bound(w); it != counts.end() && it->first.compare(0, w.size(), w) == 0; ++it) c += it->second;
  return Rational(c, n);
}

EmpiricalMeasure empirical_measure(const PointRep& x, int L, int64_t n, int64_t start) {
  if (n < 1 || L < 1) throw SpecError("empirical measure needs n >= 1 and L >= 1");
  EmpiricalMeasure m;
  m.L = L;
  m.n = n;
  std::string w = window(x, start, start + n + L - 2);
  for (int64_t j = 0; j < n; ++j) ++m.counts[w.substr((size_t)j, (size_t)L)];
  return m;
}

EmpiricalMeasure empirical_measure(const SymbolStream& s, int L, int64_t n, int64_t start) {
  if (n < 1 || L < 1) throw SpecError("empirical measure needs n >= 1 and L >= 1");
  if (start < s.a || start + n + L - 2 > s.b) throw SpecError("empirical measure leaves the stream window");
  EmpiricalMeasure m;
  m.L = L;
  m.n = n;
  for (int64_t j = 0; j < n; ++j) ++m.counts[s.syms.substr((size_t)(start - s.a + j), (size_t)L)];
  return m;
}

EmpiricalMeasure periodic_measure(const std::string& w, int L) {
  EmpiricalMeasure m;
  m.L = L;
  m.n = (int64_t)w.size();
  std::string rep;
  while (rep.size() < w.size() + (size_t)L) rep += w;
  for (size_t j = 0; j < w.size(); ++j) ++m.counts[rep.substr(j, (size_t)L)];
  return m;
}

std::vector<std::string> CylinderEnumeration::cylinders() const {
  std::vector<std::string> out, level{""};
  if (alphabet.empty()) return out;
  while ((int)out.size() < terms) {
    std::vector<std::string> next;
    for (auto& w : level)
      for (char c : alphabet) {
        next.push_back(w + c);
        if ((int)out.size() < terms) out.push_back(next.back());
      }
    level = std::move(next);
  }
  return out;
}

std::string CylinderEnumeration::str() const { return "length-then-lex alphabet=" + alphabet + " terms=" + std::to_string(terms); }

Rational measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const CylinderEnumeration& A) {
  Rational sum(0), w(1);
  for (auto& c : A.cylinders()) {
    if ((int)c.size() > std::min(mu.L, nu.L)) throw SpecError("mismatched enumeration: cylinder longer than the measures");
    w = w / Rational(2);
    sum = sum + rabs(mu.freq(c) - nu.freq(c)) * w;
  }
  return sum;
}

Rational hausdorff_distance(const std::vector<EmpiricalMeasure>& S, const std::vector<EmpiricalMeasure>& T,
                            const CylinderEnumeration& A) {
  if (S.empty() || T.empty()) throw SpecError("Hausdorff distance of an empty set");
  auto one_side = [&](const std::vector<EmpiricalMeasure>& P, const std::vector<EmpiricalMeasure>& Q) {
    Rational worst(0);
    for (auto& m : P) {
      Rational best = measure_distance(m, Q.front(), A);
      for (size_t j = 1; j < Q.size(); ++j) best = std::min(best, measure_distance(m, Q[j], A));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(S, T), one_side(T, S));
}

std::vector<ReportRow> convergence_report(const Pipeline& p, const std::vector<std::pair<std::string, PointRep>>& points,
                                          const ReportOptions& opt) {
  std::vector<ReportRow> rows;
  int kmax = p.kmax();
  std::string alphabet = "|#[]%.?";
  for (int d = 0; d < p.schedule.K; ++d) alphabet += letter(d);
  std::sort(alphabet.begin(), alphabet.end());
  CylinderEnumeration A{alphabet, opt.terms};
  for (auto& [id, x0] : points) {
    PointRep x = normalized(x0);
    int64_t R = extent(x) + p.modulus(kmax) + opt.margin;
    auto row = [&](int k, const std::string& metric, double v, bool exact, int64_t h) {
      rows.push_back(ReportRow{id, k, metric, v, exact, h});
    };
    std::vector<SymbolStream> streams;
    SymbolStream limit;
    try {
      MarkerOracle o(p.system, p.schedule, x);
      Layout L(o, *p.codes);
      for (int k = 1; k <= kmax; ++k) streams.push_back(encode_k(L, k, -R, R));
      limit = encode_limit(L, -R, R);
    } catch (const CapacityError& e) {
      row(0, "capacity_error", 1, true, R);
      continue;
    }
    PointRep X = stream_point(limit);
    EmpiricalMeasure muX = periodic_measure(X.right, opt.cylinder_length);
    int64_t resolved = std::count_if(limit.syms.begin(), limit.syms.end(), [](char c) { return c != sym::UN; });
    row(kmax, "coverage", (double)resolved / (double)limit.size(), false, R);
    for (int k = 1; k <= kmax; ++k) {
      PointRep Xk = stream_point(streams[(size_t)k - 1]);
      int64_t N = (int64_t)p.schedule.n[(size_t)k - 1] * p.schedule.n[(size_t)k - 1];
      MetricValue dn = dN_distance(Xk, X, N, R);
      row(k, "dN", dn.value.to_double(), dn.exact, dn.horizon);
      row(k, "dN_bound_3a/2^k", 3.0 * p.schedule.a() / std::pow(2.0, k), true, 0);
      MetricValue dinf = besicovitch_estimate(Xk, X, R);
      row(k, "d_inf", dinf.value.to_double(), dinf.exact, dinf.horizon);
      // forward orbit averages of eventually periodic points are the
      // periodic measures of their right tails
      EmpiricalMeasure muK = periodic_measure(Xk.right, opt.cylinder_length);
      Rational ds = measure_distance(muK, muX, A);
      row(k, "d_star", ds.to_double(), true, 0);
      row(k, "d_H", hausdorff_distance({muK}, {muX}, A).to_double(), true, 0);
      row(k, "d_H_bound_L*3a/2^k", opt.cylinder_length * 3.0 * p.schedule.a() / std::pow(2.0, k), true, 0);
      // forward disagreement density bounds every cylinder difference by L * rho
      Rational rho = right_density(Xk, X);
      row(k, "emp_bound_L*rho", (Rational(opt.cylinder_length) * rho).to_double(), true, 0);
      row(k, "emp_bound_ok", ds <= Rational(opt.cylinder_length) * rho ? 1 : 0, true, 0);
    }
    if (x.core.empty() && x.left == x.right) {
      // pushforward of the periodic measure: one L-word per phase
      const std::string& w = x.right;
      EmpiricalMeasure push;
      push.L = opt.cylinder_length;
      push.n = (int64_t)w.size();
      for (int64_t j = 0; j < push.n; ++j) {
        SymbolStream s = encode_limit(p, shifted(x, j), 0, opt.cylinder_length - 1);
        ++push.counts[s.syms];
      }
      bool same = push.counts.size() == muX.counts.size();
      for (auto& [word, c] : push.counts) same = same && push.freq(word) == muX.freq(word);
      row(kmax, "pushforward_equal", same ? 1 : 0, true, 0);
      row(kmax, "least_period_preserved", (int64_t)X.right.size() == (int64_t)w.size() && X.core.empty() ? 1 : 0, true, 0);
    }
  }
  return rows;
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "point\tscale\tmetric\tvalue\texact\thorizon\n";
  for (auto& r : rows)
    out << r.point << '\t' << r.scale << '\t' << r.metric << '\t' << r.value << '\t' << (r.exact ? "exact" : "horizon") << '\t'
        << r.horizon << '\n';
  return out.str();
}

}  // namespace mc
