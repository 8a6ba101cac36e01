#include "markcode/clopen.hpp"

#include <algorithm>
#include <map>

#include "markcode/words.hpp"

namespace mc {

int ClopenSet::width_cap = 64;

namespace {

// a+w admissible given w admissible: only the new leading window matters
bool left_ok(const System& s, char a, const std::string& w) {
  size_t k = std::min<size_t>(w.size(), s.graph.span);
  return admissible(s, std::string(1, a) + w.substr(0, k));
}
bool right_ok(const System& s, const std::string& w, char b) {
  size_t k = std::min<size_t>(w.size(), s.graph.span);
  return admissible(s, w.substr(w.size() - k) + b);
}

void check_radius(int r) {
  if (r > ClopenSet::width_cap)
    throw WidthOverflow("clopen radius " + std::to_string(r) + " exceeds the cap " +
                        std::to_string(ClopenSet::width_cap));
}

}  // namespace

std::vector<std::string> extend_left(const System& s, const std::vector<std::string>& words) {
  std::vector<std::string> out;
  for (auto& w : words)
    for (int a = 0; a < s.alphabet; ++a)
      if (left_ok(s, letter(a), w)) out.push_back(letter(a) + w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> extend_right(const System& s, const std::vector<std::string>& words) {
  std::vector<std::string> out;
  for (auto& w : words)
    for (int b = 0; b < s.alphabet; ++b)
      if (right_ok(s, w, letter(b))) out.push_back(w + letter(b));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> extend_both(const System& s, const std::vector<std::string>& words) {
  return extend_right(s, extend_left(s, words));
}

ClopenSet::ClopenSet(const System& s) : sys_(&s) {
  if (!s.symbolic()) throw SpecError("ClopenSet needs a symbolic system");
}

ClopenSet::ClopenSet(const System& s, int radius, std::vector<std::string> patterns)
    : sys_(&s), r_(radius), pats_(std::move(patterns)) {
  if (!s.symbolic()) throw SpecError("ClopenSet needs a symbolic system");
  check_radius(radius);
  for (auto& p : pats_) {
    if ((int)p.size() != 2 * radius + 1) throw SpecError("pattern width differs from 2r+1");
    if (!admissible(s, p)) throw SpecError("pattern '" + p + "' is not admissible");
  }
  std::sort(pats_.begin(), pats_.end());
  pats_.erase(std::unique(pats_.begin(), pats_.end()), pats_.end());
  canonicalize();
}

ClopenSet ClopenSet::whole(const System& s) { return ClopenSet(s, 0, enumerate_words(s, 1)); }

ClopenSet ClopenSet::cylinder(const System& s, int64_t offset, const std::string& pattern) {
  if (pattern.empty()) throw SpecError("cylinder pattern must be nonempty");
  int64_t lo = offset, hi = offset + (int64_t)pattern.size() - 1;
  int64_t r = std::max<int64_t>(std::abs(lo), std::abs(hi));
  check_radius((int)r);
  if (!admissible(s, pattern)) return ClopenSet(s);
  std::vector<std::string> w{pattern};
  for (int64_t i = lo; i > -r; --i) w = extend_left(s, w);
  for (int64_t i = hi; i < r; ++i) w = extend_right(s, w);
  return ClopenSet(s, (int)r, w);
}

std::vector<std::string> ClopenSet::patterns_at(int radius) const {
  if (radius < r_) throw std::logic_error("patterns_at: radius below the canonical radius");
  check_radius(radius);
  std::vector<std::string> w = pats_;
  for (int i = r_; i < radius; ++i) w = extend_both(*sys_, w);
  return w;
}

bool ClopenSet::contains_word(const std::string& c) const {
  int R = (int)(c.size() / 2);
  if (R < r_) throw std::logic_error("contains_word: word narrower than the set");
  std::string mid = c.substr(R - r_, 2 * r_ + 1);
  return std::binary_search(pats_.begin(), pats_.end(), mid);
}

bool ClopenSet::contains(const PointRep& x, int64_t t) const {
  if (pats_.empty()) return false;
  return std::binary_search(pats_.begin(), pats_.end(), window(x, t - r_, t + r_));
}

void ClopenSet::canonicalize() {
  while (r_ > 0 && !pats_.empty()) {
    std::map<std::string, int> inner;
    for (auto& p : pats_) ++inner[p.substr(1, p.size() - 2)];
    bool ok = true;
    for (auto& [w, cnt] : inner) {
      int full = (int)extend_both(*sys_, {w}).size();
      if (cnt != full) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    pats_.clear();
    for (auto& [w, cnt] : inner) pats_.push_back(w);
    --r_;
  }
  if (pats_.empty()) r_ = 0;
}

ClopenSet ClopenSet::shift(int64_t i) const {
  if (pats_.empty() || i == 0) return *this;
  int64_t a = std::abs(i);
  check_radius(int(r_ + a));
  std::vector<std::string> w = pats_;
  for (int64_t k = 0; k < a - i; ++k) w = extend_left(*sys_, w);
  for (int64_t k = 0; k < a + i; ++k) w = extend_right(*sys_, w);
  return ClopenSet(*sys_, int(r_ + a), w);
}

namespace {
template <class F>
ClopenSet combine(const ClopenSet& a, const ClopenSet& b, F op) {
  int r = std::max(a.radius(), b.radius());
  auto pa = a.patterns_at(r);
  auto pb = b.patterns_at(r);
  std::vector<std::string> out;
  op(pa, pb, out);
  return ClopenSet(a.system(), r, out);
}
}  // namespace

ClopenSet ClopenSet::operator|(const ClopenSet& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

ClopenSet ClopenSet::operator&(const ClopenSet& o) const {
  if (empty() || o.empty()) return ClopenSet(*sys_);
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

ClopenSet ClopenSet::operator-(const ClopenSet& o) const {
  if (empty() || o.empty()) return *this;
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

ClopenSet ClopenSet::complement() const {
  auto all = enumerate_words(*sys_, 2 * r_ + 1);
  std::vector<std::string> out;
  std::set_difference(all.begin(), all.end(), pats_.begin(), pats_.end(), std::back_inserter(out));
  return ClopenSet(*sys_, r_, out);
}

std::string ClopenSet::str() const {
  std::string s = "r=" + std::to_string(r_) + " {";
  for (size_t i = 0; i < pats_.size(); ++i) s += (i ? ", " : "") + pats_[i];
  return s + "}";
}

}  // namespace mc
