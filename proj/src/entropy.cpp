#include "markcode/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "markcode/words.hpp"

namespace mc {

namespace {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

IMat clamp01(IMat M) { return M.unaryExpr([](long long v) { return v ? 1LL : 0LL; }); }

// reach[L](f,l) = 1 iff a path of length L joins f to l
IMat reach(const System& s, int L) {
  IMat A = transfer_matrix_int(s);
  IMat R = IMat::Identity(A.rows(), A.cols());
  for (int i = 0; i < L; ++i) R = clamp01(R * A);
  return R;
}

double ln_count(i128 c) { return std::log((double)c); }

// log #W_n for n = 0..N, in floating point with renormalisation (no overflow)
class LogCounts {
 public:
  LogCounts(const System& s, int N) : v_(N + 1, 0.0) {
    const Graph& g = s.graph;
    std::vector<double> paths(g.size(), 1.0), next(g.size());
    double shift = 0;
    for (int t = 0; t <= N; ++t) {
      double tot = 0;
      for (double x : paths) tot += x;
      // words of length span + t are paths of length t
      int n = g.span + t;
      if (n <= N) v_[n] = std::log(tot) + shift;
      for (int u = 0; u < g.size(); ++u) {
        next[u] = 0;
        for (auto [c, w] : g.out[u]) next[u] += paths[w];
      }
      paths.swap(next);
      double mx = *std::max_element(paths.begin(), paths.end());
      for (double& x : paths) x /= mx;
      shift += std::log(mx);
    }
    // shorter lengths by brute counting
    for (int n = 1; n < g.span && n <= N; ++n) v_[n] = std::log((double)count_words(s, n));
  }
  double operator()(int n) const { return v_.at(n); }
  int maxlen() const { return (int)v_.size() - 1; }

 private:
  std::vector<double> v_;
};

}  // namespace

HtopEstimate htop_estimate(const System& s, int nmax) {
  if (nmax < 2) throw std::invalid_argument("htop_estimate: nmax >= 2");
  HtopEstimate h;
  LogCounts wc(s, nmax);
  h.upper = 1e300;
  for (int n = 1; n <= nmax; ++n) {
    double v = wc(n) / n;
    if (v < h.upper) {
      h.upper = v;
      h.argmin = n;
    }
  }
  h.spectral = std::log(spectral_radius(s));
  if (std::abs(h.spectral) < 1e-14) h.spectral = 0;
  return h;
}

i128 conditional_count_brute(const System& s, int m, int mp, int n) {
  if (mp < m || m < 0 || n < 1) throw std::invalid_argument("conditional_count: need mp >= m >= 0, n >= 1");
  int Lc = n + 2 * m, e = mp - m;
  std::map<std::string, i128> cells;
  for (auto& w : enumerate_words(s, Lc + 2 * e)) ++cells[w.substr(e, Lc)];
  i128 best = 0;
  for (auto& [u, c] : cells) best = std::max(best, c);
  return best;
}

i128 conditional_count(const System& s, int m, int mp, int n) {
  if (mp < m || m < 0 || n < 1) throw std::invalid_argument("conditional_count: need mp >= m >= 0, n >= 1");
  const Graph& g = s.graph;
  int Lc = n + 2 * m, e = mp - m;
  if (e == 0) return 1;
  if (Lc < g.span) return conditional_count_brute(s, m, mp, n);
  IMat A = transfer_matrix_int(s);
  IMat P = IMat::Identity(A.rows(), A.cols());
  for (int i = 0; i < e; ++i) P = P * A;
  Eigen::Matrix<long long, Eigen::Dynamic, 1> in = P.colwise().sum().transpose();  // paths of length e into f
  Eigen::Matrix<long long, Eigen::Dynamic, 1> out = P.rowwise().sum();            // paths of length e out of l
  IMat R = reach(s, Lc - g.span);
  i128 best = 0;
  for (int f = 0; f < g.size(); ++f)
    for (int l = 0; l < g.size(); ++l)
      if (R(f, l)) best = std::max(best, (i128)in(f) * (i128)out(l));
  return best;
}

PerGrowth per_growth_in_cell(const System& s, int m, int n) {
  PerGrowth pg;
  if (!s.symbolic()) return pg;  // odometers carry no periodic points
  std::map<std::string, i128> cells;
  for (auto& w : enumerate_periodic(s, n).orbits)
    for (int k = 0; k < n; ++k) {
      std::string rot = w.substr(k) + w.substr(0, k);
      PointRep p = periodic_point(rot, 0);
      ++cells[window(p, -m, n - 1 + m)];
    }
  for (auto& [c, k] : cells) pg.max_count = std::max(pg.max_count, k);
  pg.value = pg.max_count > 1 ? std::log((double)pg.max_count) / n : 0.0;
  return pg;
}

namespace {

struct Ctx {
  const System& s;
  int K;
  double alpha;
  double h;
  double lnK;
};

// #V_1^n <= e^{n(h+a/4)} < K^{n(1-a/2)-1}
bool capacity_ok(const Ctx& c, const LogCounts& wc, int m1, int n, std::string* why = nullptr) {
  double lc = wc(n + 2 * m1);
  double mid = n * (c.h + c.alpha / 4);
  double rhs = (n * (1 - c.alpha / 2) - 1) * c.lnK;
  bool ok = lc <= mid + 1e-12 && mid < rhs;
  if (!ok && why) {
    std::ostringstream o;
    o << "n=" << n << ": log#V=" << lc << " mid=" << mid << " rhs=" << rhs;
    *why = o.str();
  }
  return ok;
}

bool conditional_ok(const Ctx& c, int k, int mprev, int mk, int n, std::string* why = nullptr) {
  i128 cnt = conditional_count(c.s, mprev, mk, n);
  double rhs = (n * c.alpha / std::pow(2.0, k) - 1) * c.lnK;
  bool ok = ln_count(std::max<i128>(cnt, 1)) < rhs;
  if (!ok && why) {
    std::ostringstream o;
    o << "n=" << n << ": log count=" << ln_count(std::max<i128>(cnt, 1)) << " rhs=" << rhs;
    *why = o.str();
  }
  return ok;
}

// Perron bound #W_n <= c * rho^n for irreducible graphs; returns log c or NaN
double perron_log_constant(const System& s) {
  Eigen::MatrixXd A = transfer_matrix(s);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  int best = 0;
  for (int i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(best))) best = i;
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  if (v.sum() < 0) v = -v;
  double mn = v.minCoeff();
  if (mn <= 1e-12) return std::nan("");
  double rho = std::abs(es.eigenvalues()(best));
  return std::log(v.sum() / mn) - s.graph.span * std::log(rho);
}

// largest extension product over all cells: bounds the conditional count for every n
i128 conditional_bound(const System& s, int e) {
  IMat A = transfer_matrix_int(s);
  IMat P = IMat::Identity(A.rows(), A.cols());
  for (int i = 0; i < e; ++i) P = P * A;
  long long in = P.colwise().sum().maxCoeff();
  long long out = P.rowwise().sum().maxCoeff();
  return (i128)in * out;
}

}  // namespace

Schedule build_schedule(const System& s, int K, int kmax, const ScheduleOptions& opt) {
  if (s.kind == Kind::Odometer) throw ScheduleError("build_schedule expects a symbolic system");
  if (K < 2) throw ScheduleError("K must be at least 2");
  if (kmax < 1) throw ScheduleError("kmax must be at least 1");
  double lnK = std::log((double)K);
  double a;
  Rational alpha;
  if (opt.alpha) {
    alpha = *opt.alpha;
    a = alpha.to_double();
  } else {
    a = lnK - std::log(spectral_radius(s));
    // round to a dyadic with 40 fractional bits so budgets stay reproducible
    alpha = Rational((i128)std::llround(a * std::ldexp(1.0, 40)), (i128)1 << 40);
    a = alpha.to_double();
  }
  if (a <= 1e-12) throw ScheduleError("infeasible: topological entropy is not below log K (alpha = 0)");
  Ctx c{s, K, a, lnK - a, lnK};

  Schedule sch;
  sch.K = K;
  sch.alpha = alpha;
  for (int k = 1; k <= kmax; ++k) sch.m.push_back(k - 1);

  // scale 1
  int limit = opt.search_limit;
  LogCounts wc(s, std::max(opt.ncert, 64) * 4 + 8);
  double logc = perron_log_constant(s);
  int n1 = 0;
  for (int cand = 1; cand <= limit && !n1; ++cand) {
    int top = std::max(opt.ncert, 2 * cand);
    if (top + 2 * sch.m[0] > wc.maxlen()) break;
    bool ok = true;
    for (int n = cand; n <= top && ok; ++n) ok = capacity_ok(c, wc, sch.m[0], n);
    if (!ok) continue;
    // periodic-code condition: #Per_{n1} < K^{n1-1}
    if (s.has_periodic_points() && cand <= 30) {
      double per = (double)least_period_points(s, cand);
      if (!(per < std::pow((double)K, cand - 1))) continue;
    } else if (s.has_periodic_points()) {
      // #Per_n <= trace(A^n) <= states * rho^n, enough for large candidates
      double bound = std::log((double)s.graph.size()) + cand * std::log(spectral_radius(s));
      if (!(bound < (cand - 1) * lnK)) continue;
    }
    n1 = cand;
  }
  if (!n1) throw ScheduleError("no admissible n_1 within the search budget");
  if (std::isnan(logc)) throw ScheduleError("word graph is not irreducible; the Perron tail bound is unavailable");
  sch.n.push_back(n1);

  for (int k = 2; k <= kmax; ++k) {
    int e = sch.m[k - 1] - sch.m[k - 2];
    int lo = std::max(sch.n.back(), (int)std::ceil(opt.headroom * std::pow(2.0, k) / a - 1e-9));
    int nk = 0;
    i128 B = conditional_bound(s, e);
    for (int cand = lo; cand <= limit && !nk; ++cand) {
      int top = std::max(opt.ncert, cand + 64);
      bool ok = true;
      for (int n = cand; n <= top && ok; ++n) ok = conditional_ok(c, k, sch.m[k - 2], sch.m[k - 1], n);
      // tail: the count never exceeds B while the bound grows with n
      if (ok) ok = ln_count(std::max<i128>(B, 1)) < (top * a / std::pow(2.0, k) - 1) * lnK;
      if (ok) nk = cand;
    }
    if (!nk) throw ScheduleError("no admissible n_" + std::to_string(k) + " within the search budget");
    sch.n.push_back(nk);
  }
  int acc = 0;
  for (int k = 0; k < kmax; ++k) {
    acc += sch.n[k];
    sch.nprime.push_back(acc);
    sch.r.push_back(sch.m[k] + acc);
  }
  return sch;
}

std::vector<InequalityCheck> verify_schedule(const System& s, const Schedule& sch, const ScheduleOptions& opt) {
  std::vector<InequalityCheck> out;
  double lnK = std::log((double)sch.K);
  double a = sch.a();
  Ctx c{s, sch.K, a, std::log(spectral_radius(s)), lnK};
  int kmax = sch.kmax();
  auto add = [&](std::string fam, int k, bool ok, std::string d) { out.push_back({fam, k, ok, d}); };

  // shape
  bool shape = (int)sch.m.size() == kmax && (int)sch.nprime.size() == kmax && (int)sch.r.size() == kmax;
  for (int k = 0; shape && k < kmax; ++k) {
    int np = 0;
    for (int j = 0; j <= k; ++j) np += sch.n[j];
    shape = sch.nprime[k] == np && (k == 0 || sch.n[k] >= sch.n[k - 1]) && sch.r[k] >= sch.m[k];
  }
  add("shape", 0, shape, "n nondecreasing, nprime partial sums");

  // capacity at scale 1 on the certified range plus the Perron tail
  int n1 = sch.n[0];
  int top = std::max(opt.ncert, 2 * n1);
  LogCounts wc(s, top + 2 * sch.m[0] + 4);
  bool ok = true;
  std::string why;
  for (int n = n1; n <= top && ok; ++n) ok = capacity_ok(c, wc, sch.m[0], n, &why);
  double logc = perron_log_constant(s);
  bool tail = !std::isnan(logc);
  // beyond `top`: log#W_n <= logc + n h needs n a/4 >= logc; the right inequality is linear in n
  if (tail) tail = logc <= top * a / 4 + 1e-12;
  double slope = (1 - a / 2) * lnK - (c.h + a / 4);
  if (tail) tail = slope > 0 || !ok;
  add("capacity", 1, ok && tail,
      ok ? (tail ? "n in [" + std::to_string(n1) + "," + std::to_string(top) + "] and Perron tail" : "tail not certified")
         : why);

  for (int k = 2; k <= kmax; ++k) {
    int nk = sch.n[k - 1];
    int topk = std::max(opt.ncert, nk + 64);
    bool okk = true;
    std::string w;
    for (int n = nk; n <= topk && okk; ++n) okk = conditional_ok(c, k, sch.m[k - 2], sch.m[k - 1], n, &w);
    i128 B = conditional_bound(s, sch.m[k - 1] - sch.m[k - 2]);
    bool t = ln_count(std::max<i128>(B, 1)) < (topk * a / std::pow(2.0, k) - 1) * lnK;
    add("conditional", k, okk && t, okk ? (t ? "explicit range and bounded-count tail" : "tail not certified") : w);
    bool head = a * nk >= opt.headroom * std::pow(2.0, k) - 1e-9;
    add("growth", k, head, "alpha n_k >= C 2^k with C=" + std::to_string(opt.headroom));
  }

  // periodic growth per cell: explicit for small n, pinned beyond (a least-period-n
  // point is determined by any n consecutive coordinates, hence by its V_k^n cell)
  for (int k = 1; k <= kmax; ++k) {
    bool okp = true;
    int last = std::min(top, 14);
    for (int n = 1; n <= last && okp; ++n) okp = per_growth_in_cell(s, sch.m[k - 1], n).value < a / std::pow(2.0, k);
    add("periodic-growth", k, okp, "explicit for n<=" + std::to_string(last) + ", cylinder pinning beyond");
  }
  if (s.has_periodic_points()) {
    double per = n1 <= 30 ? (double)least_period_points(s, n1) : -1;
    bool okc = per >= 0 && per < std::pow((double)sch.K, n1 - 1);
    for (int n = 1; okc && n <= std::min(n1, 20); ++n) {
      // fewer least-period-n points than the full K-shift has
      double fullK = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) {
          // Moebius inversion over divisors
          int mu = 1, x = n / d;
          for (int p = 2; p * p <= x; ++p)
            if (x % p == 0) {
              x /= p;
              if (x % p == 0) {
                mu = 0;
                break;
              }
              mu = -mu;
            }
          if (mu && x > 1) mu = -mu;
          fullK += mu * std::pow((double)sch.K, d);
        }
      okc = (double)least_period_points(s, n) <= fullK;
    }
    add("periodic-code", 1, okc, "#Per_{n1} < K^{n1-1} and per-period counts below the full K-shift");
  }
  return out;
}

namespace {
std::string ints(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}
std::vector<int> parse_ints(const std::string& v) {
  std::string t = v;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw SpecError("expected [..] list");
  t = t.substr(1, t.size() - 2);
  std::vector<int> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw SpecError("empty list item");
    out.push_back(std::stoi(item));
  }
  return out;
}
}  // namespace

std::string serialize_schedule(const Schedule& s) {
  return "K: " + std::to_string(s.K) + "\nalpha: " + s.alpha.str() + "\nm: " + ints(s.m) + "\nn: " + ints(s.n) +
         "\nnprime: " + ints(s.nprime) + "\nr: " + ints(s.r) + "\n";
}

Schedule parse_schedule(const std::string& text) {
  Schedule s;
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto c = line.find(':');
    if (c == std::string::npos) throw SpecError("schedule: expected 'key: value'");
    std::string k = line.substr(0, c), v = line.substr(c + 1);
    while (!v.empty() && v.front() == ' ') v.erase(v.begin());
    kv[k] = v;
  }
  for (auto key : {"K", "alpha", "m", "n", "nprime", "r"})
    if (!kv.count(key)) throw SpecError(std::string("schedule: missing ") + key);
  s.K = std::stoi(kv["K"]);
  s.alpha = Rational::parse(kv["alpha"]);
  s.m = parse_ints(kv["m"]);
  s.n = parse_ints(kv["n"]);
  s.nprime = parse_ints(kv["nprime"]);
  s.r = parse_ints(kv["r"]);
  if (s.m.size() != s.n.size() || s.n.size() != s.nprime.size() || s.n.size() != s.r.size() || s.n.empty())
    throw SpecError("schedule: arrays differ in length");
  return s;
}

FullnessResult appendix_fullness_check(const System& s, int K, int nmax) {
  FullnessResult r;
  if (nmax * std::log2((double)K) > 120) throw std::invalid_argument("fullness check: K^nmax exceeds exact range");
  WordCounter wc(s, nmax + 1);
  i128 pw = 1;
  for (int n = 1; n <= nmax; ++n) {
    pw *= K;
    i128 c = wc.count(n);
    if (c != pw) {
      r.full = false;
      r.failed_at = n;
      r.count = c;
      return r;
    }
  }
  return r;
}

std::optional<PointRep> appendix_witness(const System& s, const std::string& target) {
  if (target.size() % 2 == 0) throw std::invalid_argument("target must have odd length 2n+1");
  if (!admissible(s, target)) return std::nullopt;
  int64_t n = (int64_t)target.size() / 2;
  // periodic candidate first: repeat the least period of the target
  int p = least_period(target);
  PointRep x = periodic_point(target.substr(0, p), -n);
  if (valid_point(s, x) && window(x, -n, n) == target) return x;
  // otherwise walk out of both ends of the target until a state repeats
  const Graph& g = s.graph;
  auto walk = [&](std::string edge_state, bool forward) {
    std::string path;
    std::map<std::string, size_t> seen;
    std::string st = edge_state;
    while (!seen.count(st)) {
      seen[st] = path.size();
      int v = g.find(st);
      if (forward) {
        char c = g.out[v].front().first;
        path.push_back(c);
        st = st.substr(1) + c;
      } else {
        // any predecessor
        for (int u = 0; u < g.size(); ++u)
          for (auto [c, t] : g.out[u])
            if (t == v) {
              path.push_back(g.states[u][0]);
              st = g.states[u];
              goto found;
            }
      found:;
      }
    }
    size_t cut = seen[st];
    return std::make_pair(path.substr(0, cut), path.substr(cut));
  };
  std::string head = target.substr(0, std::min<size_t>(g.span, target.size()));
  std::string tail = target.substr(target.size() - std::min<size_t>(g.span, target.size()));
  if ((int)head.size() < g.span) return std::nullopt;
  auto [rpre, rcyc] = walk(tail, true);
  auto [lpre, lcyc] = walk(head, false);
  PointRep y;
  std::string lp(lpre.rbegin(), lpre.rend());
  std::string lc(lcyc.rbegin(), lcyc.rend());
  y.core = lp + target + rpre;
  y.anchor = -n - (int64_t)lp.size();
  y.right = rcyc;
  y.left = lc;
  if (valid_point(s, y) && window(y, -n, n) == target) return y;
  return std::nullopt;
}

}  // namespace mc
