#include "markcode/point.hpp"

#include <algorithm>
#include <sstream>

namespace mc {

static int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

char PointRep::at(int64_t i) const {
  if (i >= anchor && i < core_end()) return core[size_t(i - anchor)];
  if (i >= core_end()) return right[size_t(mod(i - core_end(), (int64_t)right.size()))];
  return left[size_t(mod(i - anchor, (int64_t)left.size()))];
}

char coordinate(const PointRep& x, int64_t i) { return x.at(i); }

PointRep periodic_point(std::string period, int64_t anchor) {
  PointRep p;
  p.left = period;
  p.right = period;
  p.core = period;
  p.anchor = anchor;
  return p;
}

std::string window(const PointRep& x, int64_t a, int64_t b) {
  std::string s;
  if (b < a) return s;
  s.reserve(size_t(b - a + 1));
  for (int64_t i = a; i <= b; ++i) s.push_back(x.at(i));
  return s;
}

PointRep shifted(const PointRep& x, int64_t t, const System* odo) {
  PointRep y = x;
  if (!x.odometer()) {
    y.anchor -= t;
    return y;
  }
  if (!odo || odo->kind != Kind::Odometer) throw SpecError("shifting an odometer point needs its system");
  // add t (possibly negative) with carry, wrapping at the truncation depth
  int64_t carry = t;
  for (size_t k = 0; k < y.digits.size(); ++k) {
    int64_t p = odo->base[k];
    int64_t v = y.digits[k] + carry;
    y.digits[k] = int(mod(v, p));
    carry = (v - mod(v, p)) / p;
    if (carry == 0) break;
  }
  return y;
}

PointRep normalized(const PointRep& x) {
  if (x.odometer()) return x;
  PointRep y = x;
  y.left = primitive_root(x.left);
  y.right = primitive_root(x.right);
  // absorb core letters that continue the tails
  while (!y.core.empty() && y.core.back() == y.right.back()) {
    y.right = y.right.back() + y.right.substr(0, y.right.size() - 1);
    y.core.pop_back();
  }
  while (!y.core.empty()) {
    char c = y.core.front();
    std::string l = y.left;
    if (l.front() != c) break;
    y.left = l.substr(1) + c;
    y.core.erase(y.core.begin());
    ++y.anchor;
  }
  return y;
}

bool valid_point(const System& s, const PointRep& x) {
  if (x.odometer()) {
    if (s.kind != Kind::Odometer || x.digits.size() != s.base.size()) return false;
    for (size_t k = 0; k < x.digits.size(); ++k)
      if (x.digits[k] < 0 || x.digits[k] >= s.base[k]) return false;
    return true;
  }
  if (!s.symbolic() || x.left.empty() || x.right.empty()) return false;
  int64_t span = s.graph.span + 1;
  int64_t a = x.core_begin() - 2 * (int64_t)x.left.size() - span;
  int64_t b = x.core_end() + 2 * (int64_t)x.right.size() + span;
  return admissible(s, window(x, a, b));
}

namespace {
std::string trim(std::string s) {
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
  size_t i = 0;
  while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  return s.substr(i);
}
}  // namespace

PointRep parse_point(std::string_view text) {
  std::string t = trim(std::string(text));
  PointRep p;
  if (t.rfind("digits:", 0) == 0) {
    std::string body = trim(t.substr(7));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw SpecError("digits: expected [..]");
    body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit)) throw SpecError("bad digit '" + item + "'");
      p.digits.push_back(std::stoi(item));
    }
    if (p.digits.empty()) throw SpecError("odometer point needs at least one digit");
    return p;
  }
  std::istringstream in(t);
  std::string k1, l, k2, c, k3, r, extra;
  if (!(in >> k1 >> l >> k2 >> c >> k3 >> r) || (in >> extra) || k1 != "left:" || k2 != "core:" || k3 != "right:")
    throw SpecError("point spec must read 'left: <word> core: <word>@<anchor> right: <word>'");
  auto at = c.rfind('@');
  if (at == std::string::npos) throw SpecError("core needs an '@<anchor>' suffix");
  p.left = l;
  p.right = r;
  p.core = c.substr(0, at);
  std::string an = c.substr(at + 1);
  if (an.empty()) throw SpecError("missing anchor");
  size_t used = 0;
  try {
    p.anchor = std::stoll(an, &used);
  } catch (...) {
    throw SpecError("bad anchor '" + an + "'");
  }
  if (used != an.size()) throw SpecError("bad anchor '" + an + "'");
  for (auto* w : {&p.left, &p.core, &p.right})
    for (char ch : *w)
      if (letter_value(ch) < 0) throw SpecError("bad letter in point spec");
  return p;
}

std::string serialize_point(const PointRep& x) {
  if (x.odometer()) {
    std::string s = "digits: [";
    for (size_t i = 0; i < x.digits.size(); ++i) s += (i ? ", " : "") + std::to_string(x.digits[i]);
    return s + "]";
  }
  return "left: " + x.left + " core: " + x.core + "@" + std::to_string(x.anchor) + " right: " + x.right;
}

std::vector<std::string> itinerary(const PointRep& x, int m, int64_t a, int64_t b) {
  std::vector<std::string> out;
  for (int64_t n = a; n <= b; ++n) out.push_back(window(x, n - m, n + m));
  return out;
}

std::vector<std::vector<std::string>> product_coding(const PointRep& x, const std::vector<int>& radii,
                                                     int64_t a, int64_t b) {
  if (radii.empty()) throw SpecError("product coding needs at least one radius");
  std::vector<std::vector<std::string>> out;
  for (int64_t n = a; n <= b; ++n) {
    std::vector<std::string> tup;
    for (int m : radii) tup.push_back(window(x, n - m, n + m));
    out.push_back(tup);
  }
  return out;
}

}  // namespace mc
