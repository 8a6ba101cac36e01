#include "markcode/words.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mc {

namespace {
constexpr i128 kCountCap = (i128)1 << 125;

void require_symbolic(const System& s) {
  if (!s.symbolic()) throw SpecError("word counting needs a symbolic system");
}
}  // namespace

Eigen::MatrixXd transfer_matrix(const System& s) {
  return transfer_matrix_int(s).cast<double>();
}

Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> transfer_matrix_int(const System& s) {
  require_symbolic(s);
  const Graph& g = s.graph;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> A =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(g.size(), g.size());
  for (int v = 0; v < g.size(); ++v)
    for (auto [c, t] : g.out[v]) A(v, t) += 1;
  return A;
}

double spectral_radius(const System& s) {
  Eigen::MatrixXd A = transfer_matrix(s);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

WordCounter::WordCounter(const System& s, int maxlen) : sys_(&s), maxlen_(maxlen) {
  require_symbolic(s);
  const Graph& g = s.graph;
  paths_.assign(maxlen + 1, std::vector<i128>(g.size(), 0));
  for (int v = 0; v < g.size(); ++v) paths_[0][v] = 1;
  for (int t = 1; t <= maxlen; ++t)
    for (int v = 0; v < g.size(); ++v) {
      i128 acc = 0;
      for (auto [c, u] : g.out[v]) {
        acc += paths_[t - 1][u];
        if (acc > kCountCap) throw std::overflow_error("word count exceeds 128-bit range");
      }
      paths_[t][v] = acc;
    }
}

int WordCounter::state_of(std::string_view w) const {
  const Graph& g = sys_->graph;
  if ((int)w.size() < g.span) return -1;
  int v = g.find(w.substr(0, g.span));
  for (size_t i = g.span; v >= 0 && i < w.size(); ++i) {
    int nxt = -1;
    for (auto [c, t] : g.out[v])
      if (c == w[i]) nxt = t;
    v = nxt;
  }
  return v;
}

i128 WordCounter::completions(std::string_view u, int n) const {
  const Graph& g = sys_->graph;
  if ((int)u.size() > n) return 0;
  if (n - g.span > maxlen_) throw std::out_of_range("WordCounter: length beyond precomputed range");
  if ((int)u.size() >= g.span) {
    int v = state_of(u);
    return v < 0 ? 0 : paths_[n - u.size()][v];
  }
  if (n < g.span) {
    std::set<std::string> pre;
    for (auto& st : g.states)
      if (st.compare(0, u.size(), u) == 0) pre.insert(st.substr(0, n));
    return (i128)pre.size();
  }
  i128 acc = 0;
  for (int v = 0; v < g.size(); ++v)
    if (g.states[v].compare(0, u.size(), u) == 0) acc += paths_[n - g.span][v];
  return acc;
}

i128 WordCounter::count(int n) const { return completions("", n); }

i128 WordCounter::rank(std::string_view w) const {
  int n = (int)w.size();
  if (completions(w, n) == 0) return -1;
  i128 r = 0;
  std::string pre;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < sys_->alphabet; ++a) {
      char c = letter(a);
      if (c == w[i]) break;
      r += completions(pre + c, n);
    }
    pre.push_back(w[i]);
  }
  return r;
}

std::string WordCounter::unrank(i128 r, int n) const {
  if (r < 0 || r >= count(n)) throw std::out_of_range("unrank: index outside the word list");
  std::string pre;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < sys_->alphabet; ++a) {
      i128 c = completions(pre + letter(a), n);
      if (r < c) {
        pre.push_back(letter(a));
        break;
      }
      r -= c;
    }
  }
  return pre;
}

std::vector<std::string> enumerate_words(const System& s, int n) {
  require_symbolic(s);
  if (n < 1) throw std::invalid_argument("enumerate_words: n >= 1");
  const Graph& g = s.graph;
  std::vector<std::string> out;
  if (n < g.span) {
    std::set<std::string> pre;
    for (auto& st : g.states) pre.insert(st.substr(0, n));
    return {pre.begin(), pre.end()};
  }
  std::string w;
  std::function<void(int, int)> dfs = [&](int v, int left) {
    if (left == 0) {
      out.push_back(w);
      return;
    }
    for (auto [c, t] : g.out[v]) {
      w.push_back(c);
      dfs(t, left - 1);
      w.pop_back();
    }
  };
  for (int v = 0; v < g.size(); ++v) {
    w = g.states[v];
    dfs(v, n - g.span);
  }
  return out;
}

i128 count_words(const System& s, int n) {
  WordCounter wc(s, std::max(0, n));
  return wc.count(n);
}

int least_period(std::string_view w) {
  int n = (int)w.size();
  if (n == 0) return 0;
  std::vector<int> f(n, 0);  // KMP failure
  for (int i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = f[k - 1];
    if (w[i] == w[k]) ++k;
    f[i] = k;
  }
  return n - f[n - 1];
}

PeriodicCount enumerate_periodic(const System& s, int n) {
  require_symbolic(s);
  if (n < 1) throw std::invalid_argument("enumerate_periodic: n >= 1");
  const Graph& g = s.graph;
  PeriodicCount pc;
  std::set<std::string> orbits;
  std::string w;
  std::function<void(int, int, int)> dfs = [&](int start, int v, int left) {
    if (left == 0) {
      if (v != start) return;
      ++pc.fixed;
      if ((int)primitive_root(w).size() == n) orbits.insert(least_rotation(w));
      return;
    }
    for (auto [c, t] : g.out[v]) {
      w.push_back(c);
      dfs(start, t, left - 1);
      w.pop_back();
    }
  };
  for (int v = 0; v < g.size(); ++v) dfs(v, v, n);
  pc.orbits.assign(orbits.begin(), orbits.end());
  return pc;
}

i128 fix_count_trace(const System& s, int n) {
  auto A = transfer_matrix_int(s);
  auto P = A;
  for (int i = 1; i < n; ++i) P = (P * A).eval();
  return (i128)P.trace();
}

static int moebius(int x) {
  int mu = 1;
  for (int p = 2; p * p <= x; ++p)
    if (x % p == 0) {
      x /= p;
      if (x % p == 0) return 0;
      mu = -mu;
    }
  return x > 1 ? -mu : mu;
}

i128 least_period_points(const System& s, int n) {
  i128 tot = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) tot += moebius(n / d) * fix_count_trace(s, d);
  return tot;
}

std::vector<std::string> lyndon_words(int K, int n) {
  std::vector<std::string> out;
  if (n < 1) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    int m = (int)w.size();
    if (m == n) {
      std::string s;
      for (int d : w) s.push_back(letter(d));
      out.push_back(s);
    }
    while ((int)w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == K - 1) w.pop_back();
  }
  return out;
}

}  // namespace mc
