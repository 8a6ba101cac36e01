#include "markcode/sampling.hpp"

#include <Eigen/Dense>

#include "markcode/words.hpp"

namespace mc {

namespace {

using Mat = Eigen::MatrixXd;

Mat adjacency(const Graph& g) {
  Mat A = Mat::Zero(g.size(), g.size());
  for (int v = 0; v < g.size(); ++v)
    for (auto& [c, w] : g.out[(size_t)v]) A(v, w) += 1;
  return A;
}

// closed walk of length p at u, uniform among all of them; empty if none
std::string closed_walk(const Graph& g, const Mat& A, int u, int p, std::mt19937_64& rng) {
  std::vector<Mat> pw{Mat::Identity(g.size(), g.size())};
  for (int i = 1; i <= p; ++i) pw.push_back(pw.back() * A);
  if (pw[(size_t)p](u, u) < 0.5) return {};
  std::string w;
  int v = u;
  for (int rem = p; rem > 0; --rem) {
    std::vector<double> wt;
    for (auto& [c, t] : g.out[(size_t)v]) wt.push_back(pw[(size_t)rem - 1](t, u));
    std::discrete_distribution<size_t> pick(wt.begin(), wt.end());
    auto& [c, t] = g.out[(size_t)v][pick(rng)];
    w += c;
    v = t;
  }
  return w;
}

std::string tail_at(const Graph& g, const Mat& A, int u, const SampleSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> per(1, spec.period_max);
  for (int tries = 0; tries < 64; ++tries) {
    std::string w = closed_walk(g, A, u, per(rng), rng);
    if (!w.empty()) return w;
  }
  for (int p = 1; p <= g.size() * 2 + spec.period_max; ++p) {
    std::string w = closed_walk(g, A, u, p, rng);
    if (!w.empty()) return w;
  }
  throw SpecError("no closed walk through a sampled state");
}

}  // namespace

PointRep random_point(const System& s, std::mt19937_64& rng, const SampleSpec& spec) {
  if (!s.symbolic()) throw SpecError("random_point samples symbolic systems");
  const Graph& g = s.graph;
  Mat A = adjacency(g);
  int v0 = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
  int len = std::uniform_int_distribution<int>(0, spec.core_max)(rng);
  std::string core;
  int v = v0;
  for (int i = 0; i < len; ++i) {
    auto& out = g.out[(size_t)v];
    auto& [c, t] = out[std::uniform_int_distribution<size_t>(0, out.size() - 1)(rng)];
    core += c;
    v = t;
  }
  PointRep x;
  x.left = tail_at(g, A, v0, spec, rng);
  x.right = tail_at(g, A, v, spec, rng);
  x.core = core;
  x.anchor = std::uniform_int_distribution<int64_t>(spec.anchor_min, spec.anchor_max)(rng);
  if (!valid_point(s, x)) throw std::logic_error("sampled point is not admissible");
  return x;
}

}  // namespace mc
