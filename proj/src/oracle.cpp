#include "markcode/oracle.hpp"

#include <stdexcept>

#include "markcode/words.hpp"

namespace mc {

int64_t MarkerOracle::scan_limit = 200000;

namespace {
int64_t pmod(int64_t a, int64_t m) { return ((a % m) + m) % m; }
}  // namespace

MarkerOracle::MarkerOracle(const System& s, const Schedule& sch, PointRep x)
    : sys_(&s), sch_(sch), x_(normalized(x)) {
  if (x_.odometer()) throw SpecError("MarkerOracle works on symbolic points");
  size_t k = sch.kmax() + 1;
  per_.resize(k);
  per_left_.resize(k);
  per_right_.resize(k);
  grp_.resize(k);
  u_.resize(k);
}

int MarkerOracle::R(int k) const { return sch_.r[k - 1] + (k >= 2 ? sch_.nprime[k - 2] : 0); }

std::string MarkerOracle::key_window(int k, int64_t t) const { return window(x_, t - R(k), t + R(k)); }

bool MarkerOracle::pertilde(int k, int64_t t) {
  int r = sch_.r[k - 1];
  std::unordered_map<int64_t, char>* cache = &per_[k];
  int64_t slot = t;
  if (t + r < x_.core_begin()) {
    cache = &per_left_[k];
    slot = pmod(t - x_.core_begin(), (int64_t)x_.left.size());
  } else if (t - r >= x_.core_end()) {
    cache = &per_right_[k];
    slot = pmod(t - x_.core_end(), (int64_t)x_.right.size());
  }
  auto it = cache->find(slot);
  if (it != cache->end()) return it->second;
  bool v = least_period(window(x_, t - r, t + r)) <= sch_.n[k - 1];
  cache->emplace(slot, v);
  return v;
}

bool MarkerOracle::hull(int k, int64_t t) {
  int np = sch_.nprime[k - 1];
  for (int i = -(np - 1); i < np; ++i)
    if (U(k, t + i)) return true;
  return false;
}

int MarkerOracle::group(int k, int64_t t) {
  auto it = grp_[k].find(t);
  if (it != grp_[k].end()) return it->second;
  int g = 0;
  if (k == 1) {
    g = pertilde(1, t) ? 0 : 1;
  } else if (U(k - 1, t)) {
    int np = sch_.nprime[k - 2];
    for (int i = -(np - 1); i < np && !g; ++i)
      if (!pertilde(k, t + i)) g = 1;
  } else if (!hull(k - 1, t) && !pertilde(k, t)) {
    g = 2;
  }
  grp_[k].emplace(t, (char)g);
  return g;
}

bool MarkerOracle::U(int k, int64_t t) {
  auto it = u_[k].find(t);
  if (it != u_[k].end()) return it->second;
  bool v = false;
  int g = group(k, t);
  if (g) {
    v = true;
    std::string mine;
    int n = sch_.n[k - 1];
    for (int j = 1; j < n && v; ++j)
      for (int64_t u : {t - j, t + j}) {
        int h = group(k, u);
        if (!h || h > g) continue;
        if (h == g) {
          if (mine.empty()) mine = key_window(k, t);
          std::string other = key_window(k, u);
          if (other == mine) throw std::logic_error("marker keys tie within distance < n_k");
          if (other > mine) continue;
        }
        if (U(k, u)) {
          v = false;
          break;
        }
      }
  }
  u_[k].emplace(t, v);
  return v;
}

std::optional<int64_t> MarkerOracle::quiet_left(int k) const {
  if ((int)x_.left.size() > sch_.n[k - 1]) return std::nullopt;
  int extra = k >= 2 ? sch_.nprime[k - 2] : 1;
  return x_.core_begin() - sch_.r[k - 1] - extra;
}

std::optional<int64_t> MarkerOracle::quiet_right(int k) const {
  if ((int)x_.right.size() > sch_.n[k - 1]) return std::nullopt;
  int extra = k >= 2 ? sch_.nprime[k - 2] : 1;
  return x_.core_end() + sch_.r[k - 1] + extra;
}

std::optional<int64_t> MarkerOracle::return_at_or_before(int k, int64_t t) {
  auto q = quiet_left(k);
  for (int64_t s = t; t - s <= scan_limit; --s) {
    if (q && s < *q) return std::nullopt;
    if (U(k, s)) return s;
  }
  throw std::runtime_error("no return found within the scan limit at scale " + std::to_string(k));
}

std::optional<int64_t> MarkerOracle::return_at_or_after(int k, int64_t t) {
  auto q = quiet_right(k);
  for (int64_t s = t; s - t <= scan_limit; ++s) {
    if (q && s >= *q) return std::nullopt;
    if (U(k, s)) return s;
  }
  throw std::runtime_error("no return found within the scan limit at scale " + std::to_string(k));
}

int MarkerOracle::local_period(int k, int64_t t) {
  int r = sch_.r[k - 1];
  return least_period(window(x_, t - r, t + r));
}

std::string MarkerOracle::local_orbit(int k, int64_t t) {
  int p = local_period(k, t);
  return least_rotation(window(x_, t, t + p - 1));
}

}  // namespace mc
