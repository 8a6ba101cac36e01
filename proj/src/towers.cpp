#include "markcode/towers.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "markcode/point.hpp"
#include "markcode/words.hpp"

namespace mc {

TowerParams TowerParams::from(std::vector<int> n, std::vector<int> r) {
  if (n.size() != r.size()) throw SpecError("tower params: n and r differ in length");
  TowerParams p;
  p.n = std::move(n);
  p.r = std::move(r);
  int acc = 0;
  for (int v : p.n) p.nprime.push_back(acc += v);
  return p;
}

PeriodicNeighborhood periodic_neighborhood(const System& s, int n, int r) {
  PeriodicNeighborhood nb{ClopenSet(s), {}, {}};
  if (!s.has_periodic_points()) return nb;
  std::vector<std::string> pats;
  for (int p = 1; p <= n; ++p)
    for (auto& w : enumerate_periodic(s, p).orbits) {
      int id = (int)nb.orbits.size();
      nb.orbits.push_back(w);
      for (int j = 0; j < p; ++j) {
        std::string c = window(periodic_point(w, j), -r, r);
        auto [it, fresh] = nb.orbit_of.emplace(c, id);
        if (!fresh && it->second != id)
          throw SeparationError("radius " + std::to_string(r) + " does not separate orbits " + nb.orbits[it->second] +
                                " and " + w);
        pats.push_back(c);
      }
    }
  nb.set = ClopenSet(s, r, pats);
  return nb;
}

namespace {

ClopenSet hull_of(const ClopenSet& A, int n) {
  ClopenSet h = A;
  for (int m = 1; m < n; ++m) h = h | A.shift(m) | A.shift(-m);
  return h;
}
OdoClopen hull_of(const OdoClopen& A, int n) {
  OdoClopen h = A;
  for (int m = 1; m < n; ++m) h = h | A.shift(m) | A.shift(-m);
  return h;
}

// First-fit colouring of cells in lexicographic order; cells sharing a colour
// never meet within distance < n, so each colour class has n disjoint iterates.
std::vector<std::vector<int>> colour(int count, const std::vector<std::vector<int>>& conflicts) {
  std::vector<int> col(count, -1);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < count; ++i) {
    std::vector<char> used(classes.size() + 1, 0);
    for (int j : conflicts[i])
      if (col[j] >= 0) used[col[j]] = 1;
    int c = 0;
    while (used[c]) ++c;
    col[i] = c;
    if (c == (int)classes.size()) classes.emplace_back();
    classes[c].push_back(i);
  }
  return classes;
}

std::vector<ClopenSet> partition(const ClopenSet& G, int n, int minr) {
  const System& s = G.system();
  if (G.empty()) return {};
  int R = std::max(G.radius(), minr);
  auto cells = G.patterns_at(R);
  int L = 2 * R + 1, cnt = (int)cells.size();
  std::vector<std::vector<int>> conf(cnt);
  for (int m = 1; m < n && m < L; ++m) {
    std::unordered_map<std::string, std::vector<int>> by_prefix;
    for (int j = 0; j < cnt; ++j) by_prefix[cells[j].substr(0, L - m)].push_back(j);
    for (int i = 0; i < cnt; ++i) {
      auto it = by_prefix.find(cells[i].substr(m));
      if (it == by_prefix.end()) continue;
      for (int j : it->second)
        if (admissible(s, cells[i] + cells[j].substr(L - m))) {
          if (i == j) throw SeparationError("cell " + cells[i] + " returns to itself before time " + std::to_string(n));
          conf[i].push_back(j);
          conf[j].push_back(i);
        }
    }
  }
  for (int m = L; m < n; ++m)  // far apart cells: any two may meet, keep them apart
    for (int i = 0; i < cnt; ++i)
      for (int j = 0; j < cnt; ++j) conf[i].push_back(j);
  std::vector<ClopenSet> out;
  for (auto& cls : colour(cnt, conf)) {
    std::vector<std::string> pats;
    for (int i : cls) pats.push_back(cells[i]);
    out.emplace_back(s, R, pats);
  }
  return out;
}

std::vector<OdoClopen> partition(const OdoClopen& G, int n, int) {
  const System& s = G.system();
  if (G.empty()) return {};
  int d = G.depth();
  while (odometer_modulus(s, d) < n) {
    if (d >= (int)s.base.size()) throw SeparationError("odometer digits too few for return time " + std::to_string(n));
    ++d;
  }
  int64_t M = odometer_modulus(s, d);
  auto cells = G.residues_at(d);
  int cnt = (int)cells.size();
  std::vector<std::vector<int>> conf(cnt);
  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      int64_t diff = ((cells[j] - cells[i]) % M + M) % M;
      if (i != j && (diff < n || M - diff < n)) conf[i].push_back(j);
    }
  std::vector<OdoClopen> out;
  for (auto& cls : colour(cnt, conf)) {
    std::vector<int64_t> res;
    for (int i : cls) res.push_back(cells[i]);
    out.emplace_back(s, d, res);
  }
  return out;
}

template <class C>
void greedy(MarkerTowerT<C>& t, const std::vector<C>& g1, const std::vector<C>& g2) {
  C F = t.U;  // empty on entry
  int idx = 0;
  auto run = [&](const std::vector<C>& groups, const char* tag) {
    for (auto& W : groups) {
      F = F | (W - hull_of(F, t.n));
      t.W.push_back(W);
      t.pieces.push_back(std::to_string(t.k) + ":" + tag + ":" + std::to_string(idx++));
    }
  };
  run(g1, "1");
  run(g2, "2");
  t.U = F;
}

template <class C>
C all_shifts_meet(const C& A, int n) {
  C out = A;
  for (int i = 1; i < n; ++i) out = out & A.shift(i) & A.shift(-i);
  return out;
}

}  // namespace

std::vector<MarkerTower> build_towers(const System& s, const TowerParams& p) {
  if (!s.symbolic()) throw SpecError("build_towers: symbolic system expected");
  std::vector<MarkerTower> out;
  for (int k = 1; k <= p.kmax(); ++k) {
    MarkerTower t(s);
    t.k = k;
    t.n = p.n[k - 1];
    t.nprime = p.nprime[k - 1];
    t.per = periodic_neighborhood(s, t.n, p.r[k - 1]).set;
    std::vector<ClopenSet> g1, g2;
    if (k == 1) {
      g1 = partition(t.per.complement(), t.n, p.r[0]);
    } else {
      const MarkerTower& pr = out.back();
      g1 = partition(pr.U - all_shifts_meet(t.per, pr.nprime), t.n, p.r[k - 1]);
      g2 = partition(pr.per_eps - t.per, t.n, p.r[k - 1]);
    }
    greedy(t, g1, g2);
    t.hull = hull_of(t.U, t.nprime);
    t.per_eps = t.hull.complement();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<OdoTower> build_odometer_towers(const System& s, const TowerParams& p) {
  if (s.kind != Kind::Odometer) throw SpecError("build_odometer_towers: odometer expected");
  std::vector<OdoTower> out;
  for (int k = 1; k <= p.kmax(); ++k) {
    OdoTower t(s);
    t.k = k;
    t.n = p.n[k - 1];
    t.nprime = p.nprime[k - 1];
    std::vector<OdoClopen> g1, g2;
    if (k == 1)
      g1 = partition(OdoClopen::whole(s), t.n, 0);
    else {
      g1 = partition(out.back().U, t.n, 0);
      g2 = partition(out.back().per_eps, t.n, 0);
    }
    greedy(t, g1, g2);
    t.hull = hull_of(t.U, t.nprime);
    t.per_eps = t.hull.complement();
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

std::string first_of(const ClopenSet& A) { return A.empty() ? "" : "[" + A.patterns().front() + "] r=" + std::to_string(A.radius()); }
std::string first_of(const OdoClopen& A) {
  return A.empty() ? "" : "residue " + std::to_string(A.residues().front()) + " depth " + std::to_string(A.depth());
}

template <class C>
std::vector<TowerCheck> verify_impl(const MarkerTowerT<C>& t, const MarkerTowerT<C>* prev, bool aperiodic) {
  std::vector<TowerCheck> out;
  auto add = [&](const char* inv, bool ok, std::string d) { out.push_back({t.k, inv, ok, ok ? "" : d}); };

  bool ok = true;
  std::string d;
  for (int i = 1; i < t.n && ok; ++i) {
    C bad = t.U & t.U.shift(-i);
    if (!bad.empty()) {
      ok = false;
      d = "U meets T^-" + std::to_string(i) + "U at " + first_of(bad);
    }
  }
  add("disjointness", ok, d);

  C hull = hull_of(t.U, t.nprime);
  C uncovered = hull.complement() - t.per;
  add("covering", uncovered.empty() && hull == t.hull, "uncovered aperiodic point at " + first_of(uncovered));

  if (prev) {
    C allowed = aperiodic ? prev->U : (prev->U | prev->per_eps);
    C bad = t.U - allowed;
    add("nesting", bad.empty(), "U_k outside U_{k-1} u Per_eps at " + first_of(bad));
  } else {
    add("nesting", true, "");
  }

  C hn = hull_of(t.U, t.n);
  ok = true;
  for (size_t l = 0; l < t.W.size() && ok; ++l) {
    C bad = t.W[l] - hn;
    if (!bad.empty()) {
      ok = false;
      d = "piece " + t.pieces[l] + " not covered at " + first_of(bad);
    }
  }
  add("union", ok, d);
  return out;
}

}  // namespace

std::vector<TowerCheck> verify_tower(const MarkerTower& t, const MarkerTower* prev, bool aperiodic) {
  return verify_impl(t, prev, aperiodic);
}
std::vector<TowerCheck> verify_tower(const OdoTower& t, const OdoTower* prev, bool aperiodic) {
  return verify_impl(t, prev, aperiodic);
}

std::string serialize_towers(const std::vector<MarkerTower>& t) {
  std::string out;
  for (auto& x : t) out += std::to_string(x.k) + ": " + x.U.str() + "\n";
  return out;
}

std::vector<ClopenSet> parse_tower_sets(const System& s, const std::string& text) {
  std::vector<ClopenSet> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rpos = line.find("r=");
    auto lb = line.find('{'), rb = line.rfind('}');
    if (rpos == std::string::npos || lb == std::string::npos || rb == std::string::npos || rb < lb)
      throw SpecError("tower line: expected 'k: r=<radius> {..}'");
    int r = std::stoi(line.substr(rpos + 2, lb - rpos - 2));
    std::vector<std::string> pats;
    std::stringstream ss(line.substr(lb + 1, rb - lb - 1));
    std::string w;
    while (std::getline(ss, w, ',')) {
      w.erase(std::remove(w.begin(), w.end(), ' '), w.end());
      if (!w.empty()) pats.push_back(w);
    }
    out.emplace_back(s, r, pats);
  }
  return out;
}

}  // namespace mc
