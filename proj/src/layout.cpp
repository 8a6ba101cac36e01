#include "markcode/layout.hpp"

#include <algorithm>
#include <sstream>

namespace mc {

namespace {
int64_t pmod(int64_t a, int64_t m) { return ((a % m) + m) % m; }
int64_t fdiv(int64_t a, int64_t m) { return (a - pmod(a, m)) / m; }
constexpr int64_t kScan = 1 << 20;
}  // namespace

BlockBudget scale1_budget(const Rational& alpha, int64_t L) {
  BlockBudget b;
  b.filling = (int64_t)floor_mul(Rational(1) - alpha / Rational(2), L);
  b.free = L - 1 - b.filling;
  if (b.free < 0) throw CapacityError("scale 1 block of length " + std::to_string(L) + " cannot hold its filling");
  return b;
}

BlockBudget scale_k_budget(const Rational& alpha, int k, int64_t L, int64_t available) {
  BlockBudget b;
  b.filling = (int64_t)floor_mul(alpha / Rational((i128)1 << k), L);
  b.free = available - 1 - b.filling;
  if (b.free < 0)
    throw CapacityError("scale " + std::to_string(k) + " block of length " + std::to_string(L) + ": " + std::to_string(available) +
                        " free available, " + std::to_string(1 + b.filling) + " needed");
  return b;
}

CodeSet::CodeSet(const System& s, const Schedule& sch)
    : first(s, sch, 2 * sch.n[0] + 2), periodic(s, sch.K, sch.n[0]) {
  for (int k = 2; k <= sch.kmax(); ++k) cond.emplace_back(s, sch, k);
}

Layout::Layout(MarkerOracle& oracle, const CodeSet& codes)
    : o_(&oracle), codes_(&codes), sch_(&oracle.schedule()), blocks_(oracle.kmax() + 1) {}

std::string Layout::xw(int64_t a, int64_t b) const { return b < a ? std::string() : window(o_->point(), a, b); }

const BlockInfo& Layout::block(int k, int64_t t) {
  auto& M = blocks_.at(k);
  auto it = M.upper_bound(t);
  if (it != M.begin()) {
    --it;
    if (t < it->second.e) return it->second;
  }
  return k == 1 ? make_block1(t) : make_block(k, t);
}

void Layout::fill_singular(BlockInfo& B, int k, std::optional<int64_t> rl, std::optional<int64_t> rr) {
  int np = sch_->nprime[k - 1];
  int64_t p = rl ? *rl + np : (rr ? *rr - np : 0);
  B.m = o_->local_period(k, p);
  std::string seg = xw(p, p + B.m - 1);
  B.orbit = least_rotation(seg);
  B.c = p + least_rotation_index(seg);
  B.special = k >= 2 && B.m <= sch_->n[k - 2];
}

const BlockInfo& Layout::make_block1(int64_t t) {
  auto lo = o_->return_at_or_before(1, t);
  auto hi = o_->return_at_or_after(1, t + 1);
  BlockInfo B;
  B.scale = 1;
  B.b = B.mu = B.r_left = lo ? *lo : kNegInf;
  B.e = B.r_right = hi ? *hi : kPosInf;
  B.singular = !lo || !hi || *hi - *lo >= 2 * sch_->n[0];
  if (B.singular) fill_singular(B, 1, lo, hi);
  return blocks_[1].emplace(B.b, B).first->second;
}

std::pair<int64_t, int64_t> Layout::adjust(int k, int64_t r) {
  auto key = std::make_pair(k, r);
  auto it = adj_.find(key);
  if (it != adj_.end()) return it->second;
  int64_t t = r;
  std::pair<int64_t, int64_t> res{kNegInf, kNegInf};
  for (int hops = 0; hops < 4096 && res.first == kNegInf; ++hops) {
    const BlockInfo B = block(k - 1, t);
    if (!B.singular) {
      if (B.b >= r)
        for (int64_t p = B.b; p < B.e; ++p)
          if (cell(k - 1, p).role == Role::Free) {
            res = {B.b, p};
            break;
          }
    } else {
      int64_t start = std::max(r, B.b);
      for (int64_t p = start; p < B.e && p - start < kScan; ++p) {
        LayoutCell c = cell(k - 1, p);
        if (c.role == Role::Free || (c.freeable && c.role == Role::Filling && c.scale == 1)) {
          res = {p, p};
          break;
        }
      }
    }
    if (res.first == kNegInf) {
      if (B.open_right()) break;
      t = B.e;
    }
  }
  if (res.first == kNegInf)
    throw CapacityError("scale " + std::to_string(k) + ": no marker position after return " + std::to_string(r));
  adj_[key] = res;
  return res;
}

const BlockInfo& Layout::make_block(int k, int64_t t) {
  auto r = o_->return_at_or_before(k, t);
  while (r && adjust(k, *r).first > t) r = o_->return_at_or_before(k, *r - 1);
  std::optional<int64_t> nx;
  if (r) {
    nx = o_->return_at_or_after(k, *r + 1);
  } else {
    auto q = o_->quiet_left(k);
    if (!q) throw std::logic_error("returns vanish on the left without a quiet bound");
    nx = o_->return_at_or_after(k, *q);
  }
  BlockInfo B;
  B.scale = k;
  if (r) {
    auto a = adjust(k, *r);
    B.b = a.first;
    B.mu = a.second;
    B.r_left = *r;
  }
  if (nx) {
    B.e = adjust(k, *nx).first;
    B.r_right = *nx;
    if (B.e <= t) throw std::logic_error("block search overshot");
  }
  B.singular = !r || !nx || *nx - *r >= 2 * sch_->nprime[k - 1];
  if (B.singular) fill_singular(B, k, r, nx);
  return blocks_[k].emplace(B.b, B).first->second;
}

char Layout::bracket(const BlockInfo& B) {
  bool next_regular = !B.singular;
  bool prev_regular = !block(B.scale, B.b - 1).singular;
  if (prev_regular && next_regular) return sym::DB;
  if (next_regular) return sym::LB;
  if (prev_regular) return sym::RB;
  return sym::B2;
}

const std::unordered_map<int64_t, LayoutCell>& Layout::regular_plan(const BlockInfo& B) {
  int k = B.scale;
  auto key = std::make_pair(k, B.b);
  auto it = plans_.find(key);
  if (it != plans_.end()) return it->second;
  std::vector<int64_t> pool;
  for (int64_t p = B.mu + 1; p < B.e; ++p)
    if (cell(k - 1, p).role == Role::Free) pool.push_back(p);
  // literal freeing inside singular subblocks: offsets l = floor(|v| alpha / 2^k) * j
  int n1 = sch_->n[0];
  Rational a2k = sch_->alpha / Rational((i128)1 << k);
  for (int64_t p = B.mu + 1; p < B.e;) {
    const BlockInfo v = block(k - 1, p);
    if (v.singular) {
      // the subblock is the part of the singular block inside this k-block
      int64_t vb = std::max(v.b, B.b), ve = std::min(v.e, B.e);
      int64_t len = ve - vb;
      int64_t q = (int64_t)floor_mul(a2k, len);
      if (q >= 1)
        for (int64_t l = q; l < len - n1; l += q) {
          int64_t pos = vb + l;
          if (l <= n1 || pos <= B.mu || pos >= B.e) continue;
          LayoutCell c = cell(k - 1, pos);
          if (c.freeable && c.role == Role::Filling && c.scale == 1) pool.push_back(pos);
        }
    }
    if (v.open_right()) break;
    p = v.e;
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const ConditionalCodebook& cb = codes_->cond.at(k - 2);
  int64_t n = B.e - B.b;
  size_t F = (size_t)cb.length((int)n);
  if (pool.size() < F)
    throw CapacityError("scale " + std::to_string(k) + " regular block [" + std::to_string(B.b) + "," +
                        std::to_string(B.e) + "): " + std::to_string(pool.size()) + " positions available, " +
                        std::to_string(F) + " needed");
  int mc = sch_->m[k - 2], mk = sch_->m[k - 1];
  std::string code = cb.encode(xw(B.b - mc, B.e - 1 + mc), xw(B.b - mk, B.b - mc - 1), xw(B.e + mc, B.e + mk - 1), (int)n);
  std::unordered_map<int64_t, LayoutCell> plan;
  for (size_t i = 0; i < pool.size(); ++i) {
    LayoutCell c = cell(k - 1, pool[i]);
    c.scale = k;
    if (i < F) {
      c.role = Role::Filling;
      c.symbol = code[i];
    } else {
      c.role = Role::Free;
      c.symbol = sym::FR;
    }
    plan[pool[i]] = c;
  }
  return plans_.emplace(key, std::move(plan)).first->second;
}

const std::unordered_map<int64_t, LayoutCell>* Layout::segment_plan(const BlockInfo& B, int64_t t) {
  int k = B.scale;
  int64_t m = B.m;
  int64_t s = B.c + fdiv(t - B.c, m) * m, e = s + m;
  int64_t lo = B.open_left() ? kNegInf : std::max(B.mu + 1, B.r_left);
  int64_t hi = B.open_right() ? kPosInf : std::min(B.e, B.r_right + 1);
  if (s < lo || e > hi) return nullptr;
  auto key = std::make_pair(k, s);
  auto it = seg_plans_.find(key);
  if (it != seg_plans_.end()) return &it->second;
  const ConditionalCodebook& cb = codes_->cond.at(k - 2);
  int F = cb.length((int)m);
  std::vector<int64_t> pool;
  for (int64_t p = s; p < e; ++p) {
    LayoutCell c = cell(k - 1, p);
    if (c.role == Role::Free || (c.freeable && c.role == Role::Filling && c.scale == 1 && pmod(p - B.c, m) >= m - F))
      pool.push_back(p);
  }
  if ((int)pool.size() < F)
    throw CapacityError("scale " + std::to_string(k) + " singular block (period " + std::to_string(m) + ") segment at " +
                        std::to_string(s) + ": " + std::to_string(pool.size()) + " positions available, " +
                        std::to_string(F) + " needed");
  // The coarse word spans a whole period, so among least-period-m points the
  // refinement is unique: conditional rank 0, and the identification code
  // (rank among the one point of its cell) takes no digits.
  std::string code = to_kary(0, sch_->K, F);
  std::unordered_map<int64_t, LayoutCell> plan;
  for (size_t i = 0; i < pool.size(); ++i) {
    LayoutCell c = cell(k - 1, pool[i]);
    c.scale = k;
    if ((int)i < F) {
      c.role = Role::Filling;
      c.symbol = code[i];
    } else {
      c.role = Role::Free;
      c.symbol = sym::FR;
    }
    plan[pool[i]] = c;
  }
  return &seg_plans_.emplace(key, std::move(plan)).first->second;
}

LayoutCell Layout::cell(int k, int64_t t) {
  if (k < 1 || k > sch_->kmax()) throw std::out_of_range("layout scale out of range");
  const BlockInfo& B = block(k, t);
  if (k == 1) {
    int n1 = sch_->n[0];
    if (!B.singular) {
      int64_t off = t - B.b;
      if (off == 0) return {Role::Marker, 1, sym::B1, false};
      auto key = std::make_pair(1, B.b);
      auto it = first_codes_.find(key);
      if (it == first_codes_.end()) it = first_codes_.emplace(key, codes_->first.encode(xw(B.b, B.e - 1))).first;
      if (off <= (int64_t)it->second.size()) return {Role::Filling, 1, it->second[off - 1], false};
      return {Role::Free, 1, sym::FR, false};
    }
    if (!B.open_left() && t == B.b) return {Role::Marker, 1, sym::B1, false};
    const std::string& w = codes_->periodic.code_of(B.orbit);
    LayoutCell c{Role::Filling, 1, w[pmod(t - B.c, B.m)], false};
    c.freeable = (B.open_left() || t - B.b > n1) && (B.open_right() || B.e - t > n1);
    return c;
  }
  if (!B.open_left() && t == B.mu) {
    LayoutCell c = cell(k - 1, t);
    return {Role::Marker, k, bracket(B), c.freeable};
  }
  if (!B.singular) {
    const BlockInfo copy = B;
    auto& plan = regular_plan(copy);
    auto it = plan.find(t);
    if (it != plan.end()) return it->second;
  } else if (!B.special) {
    const BlockInfo copy = B;
    if (auto* plan = segment_plan(copy, t)) {
      auto it = plan->find(t);
      if (it != plan->end()) return it->second;
    }
  }
  LayoutCell c = cell(k - 1, t);
  if (c.role == Role::Free) c.scale = k;
  return c;
}

std::vector<int64_t> Layout::next_scale_markers(int k, int64_t a, int64_t b) {
  std::vector<int64_t> out;
  int64_t t = a;
  while (t <= b) {
    const BlockInfo B = block(k, t);
    int64_t from = B.open_left() ? std::max(a, B.c) : B.mu + 1;
    int64_t to = B.open_right() ? b + 1 : B.e;
    int64_t first = kNegInf;
    for (int64_t p = from; p < to && p - from < kScan; ++p)
      if (cell(k, p).role == Role::Free) {
        first = p;
        break;
      }
    if (first != kNegInf) {
      if (!B.singular) {
        if (first >= a && first <= b) out.push_back(first);
      } else {
        // m' is the least multiple of m that is >= n_k
        int64_t mp = B.m * ((sch_->n[k - 1] + B.m - 1) / B.m);
        for (int64_t p = first; p < to && p <= b; p += mp)
          if (p >= a) out.push_back(p);
      }
    }
    if (B.open_right()) break;
    t = B.e;
  }
  return out;
}

std::string Layout::dump(int k, int64_t a, int64_t b) {
  std::ostringstream out;
  for (int64_t t = a; t <= b; ++t) {
    LayoutCell c = cell(k, t);
    std::string role;
    if (c.role == Role::Marker) {
      switch (c.symbol) {
        case sym::B1: role = "marker1"; break;
        case sym::LB: role = "leftBracket"; break;
        case sym::RB: role = "rightBracket"; break;
        case sym::DB: role = "bothBracket"; break;
        default: role = "markerK(" + std::to_string(c.scale) + ")";
      }
    } else if (c.role == Role::Filling) {
      role = "filling(" + std::to_string(c.scale) + ")";
    } else {
      role = "free(" + std::to_string(k) + ")";
    }
    out << t << ' ' << c.scale << ' ' << role << '\n';
  }
  return out.str();
}

}  // namespace mc
