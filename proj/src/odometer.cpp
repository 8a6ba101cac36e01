#include "markcode/odometer.hpp"

#include <algorithm>
#include <stdexcept>

namespace mc {

int64_t odometer_modulus(const System& s, int depth) {
  if (depth < 0 || depth > (int)s.base.size()) throw SpecError("odometer depth beyond truncation");
  int64_t m = 1;
  for (int k = 0; k < depth; ++k) {
    m *= s.base[k];
    if (m > (int64_t)1 << 40) throw std::overflow_error("odometer modulus too large");
  }
  return m;
}

int64_t odometer_value(const System& s, const PointRep& x, int depth) {
  int64_t v = 0, w = 1;
  for (int k = 0; k < depth; ++k) {
    v += w * x.digits[k];
    w *= s.base[k];
  }
  return v;
}

std::vector<int> odometer_digits(const System& s, int64_t r, int depth) {
  std::vector<int> d;
  for (int k = 0; k < depth; ++k) {
    d.push_back(int(r % s.base[k]));
    r /= s.base[k];
  }
  return d;
}

OdoClopen::OdoClopen(const System& s) : sys_(&s) {
  if (s.kind != Kind::Odometer) throw SpecError("OdoClopen needs an odometer");
}

OdoClopen::OdoClopen(const System& s, int depth, std::vector<int64_t> residues)
    : sys_(&s), d_(depth), res_(std::move(residues)) {
  if (s.kind != Kind::Odometer) throw SpecError("OdoClopen needs an odometer");
  int64_t m = odometer_modulus(s, depth);
  for (auto r : res_)
    if (r < 0 || r >= m) throw SpecError("residue out of range");
  std::sort(res_.begin(), res_.end());
  res_.erase(std::unique(res_.begin(), res_.end()), res_.end());
  canonicalize();
}

OdoClopen OdoClopen::whole(const System& s) { return OdoClopen(s, 0, {0}); }

OdoClopen OdoClopen::prefix(const System& s, const std::vector<int>& digits) {
  int64_t v = 0, w = 1;
  for (size_t k = 0; k < digits.size(); ++k) {
    if (k >= s.base.size() || digits[k] < 0 || digits[k] >= s.base[k]) throw SpecError("bad digit prefix");
    v += w * digits[k];
    w *= s.base[k];
  }
  return OdoClopen(s, (int)digits.size(), {v});
}

int64_t OdoClopen::modulus() const { return odometer_modulus(*sys_, d_); }

std::vector<int64_t> OdoClopen::residues_at(int depth) const {
  if (depth < d_) throw std::logic_error("residues_at: depth below canonical depth");
  int64_t m = modulus(), M = odometer_modulus(*sys_, depth);
  std::vector<int64_t> out;
  for (int64_t q = 0; q < M / m; ++q)
    for (auto r : res_) out.push_back(r + q * m);
  std::sort(out.begin(), out.end());
  return out;
}

bool OdoClopen::contains(const PointRep& x, int64_t t) const {
  if (res_.empty()) return false;
  int64_t m = modulus();
  int64_t v = ((odometer_value(*sys_, x, d_) + t) % m + m) % m;
  return std::binary_search(res_.begin(), res_.end(), v);
}

void OdoClopen::canonicalize() {
  if (res_.empty()) {
    d_ = 0;
    return;
  }
  while (d_ > 0) {
    int64_t m = modulus();
    int64_t mc = m / sys_->base[d_ - 1];
    // coarsenable iff membership only depends on r mod mc
    std::vector<char> in(m, 0);
    for (auto r : res_) in[r] = 1;
    bool ok = true;
    for (int64_t r = 0; r < m && ok; ++r) ok = in[r] == in[r % mc];
    if (!ok) break;
    std::vector<int64_t> nr;
    for (int64_t r = 0; r < mc; ++r)
      if (in[r]) nr.push_back(r);
    res_ = nr;
    --d_;
  }
}

OdoClopen OdoClopen::shift(int64_t i) const {
  int64_t m = modulus();
  std::vector<int64_t> out;
  for (auto r : res_) out.push_back(((r + i) % m + m) % m);
  return OdoClopen(*sys_, d_, out);
}

namespace {
template <class F>
OdoClopen combine(const OdoClopen& a, const OdoClopen& b, F op) {
  int d = std::max(a.depth(), b.depth());
  auto x = a.residues_at(d), y = b.residues_at(d);
  std::vector<int64_t> out;
  op(x, y, out);
  return OdoClopen(a.system(), d, out);
}
}  // namespace

OdoClopen OdoClopen::operator|(const OdoClopen& o) const {
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}
OdoClopen OdoClopen::operator&(const OdoClopen& o) const {
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}
OdoClopen OdoClopen::operator-(const OdoClopen& o) const {
  return combine(*this, o, [](auto& x, auto& y, auto& out) {
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}
OdoClopen OdoClopen::complement() const { return whole(*sys_) - *this; }

std::string OdoClopen::str() const {
  std::string s = "depth=" + std::to_string(d_) + " {";
  for (size_t i = 0; i < res_.size(); ++i) {
    auto dg = odometer_digits(*sys_, res_[i], d_);
    std::string w;
    for (int x : dg) w += std::to_string(x);
    s += (i ? ", " : "") + w;
  }
  return s + "}";
}

}  // namespace mc
