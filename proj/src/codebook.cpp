#include "markcode/codebook.hpp"

#include <algorithm>
#include <cmath>

namespace mc {

std::string to_kary(i128 value, int K, int length) {
  std::string out(length, '0');
  for (int i = length - 1; i >= 0; --i) {
    out[i] = letter((int)(value % K));
    value /= K;
  }
  if (value != 0) throw CapacityError("value " + to_string(value) + " needs more than " + std::to_string(length) + " digits");
  return out;
}

i128 from_kary(const std::string& digits, int K) {
  i128 v = 0;
  for (char c : digits) {
    int d = letter_value(c);
    if (d < 0 || d >= K) throw SpecError("digit outside 0..K-1");
    v = v * K + d;
  }
  return v;
}

FirstCodebook::FirstCodebook(const System& s, const Schedule& sch, int maxlen) : sch_(&sch), wc_(s, maxlen) {}

int FirstCodebook::length(int n) const { return (int)floor_mul(Rational(1) - sch_->alpha / Rational(2), n); }

std::string FirstCodebook::encode(const std::string& word) const {
  int n = (int)word.size();
  if (n < sch_->n[0]) throw SpecError("block shorter than n_1");
  i128 r = wc_.rank(word);
  if (r < 0) throw SpecError("word '" + word + "' is not admissible");
  return to_kary(r, sch_->K, length(n));
}

std::string FirstCodebook::decode(const std::string& code, int n) const {
  i128 r = from_kary(code, sch_->K);
  if (r >= wc_.count(n)) throw SpecError("code word outside the scale-1 codebook image");
  return wc_.unrank(r, n);
}

ConditionalCodebook::ConditionalCodebook(const System& s, const Schedule& sch, int k) : sys_(&s), sch_(&sch), k_(k) {
  if (k < 2 || k > sch.kmax()) throw SpecError("conditional codebook scale out of range");
  ext_ = sch.m[k - 1] - sch.m[k - 2];
}

int ConditionalCodebook::length(int n) const {
  return (int)floor_mul(sch_->alpha / Rational((i128)1 << k_), n);
}

std::vector<std::pair<std::string, std::string>> ConditionalCodebook::refinements(const std::string& coarse) const {
  if (!admissible(*sys_, coarse)) throw SpecError("unknown context '" + coarse + "'");
  std::vector<std::string> L{""}, R{""};
  for (int i = 0; i < ext_; ++i) {
    std::vector<std::string> nl, nr;
    for (auto& a : L)
      for (int c = 0; c < sys_->alphabet; ++c)
        if (admissible(*sys_, letter(c) + a + coarse)) nl.push_back(letter(c) + a);
    for (auto& b : R)
      for (int c = 0; c < sys_->alphabet; ++c)
        if (admissible(*sys_, coarse + b + letter(c))) nr.push_back(b + letter(c));
    L = nl;
    R = nr;
  }
  std::sort(L.begin(), L.end());
  std::sort(R.begin(), R.end());
  std::vector<std::pair<std::string, std::string>> out;
  // with |coarse| >= span, a.coarse and coarse.b admissible imply a.coarse.b admissible
  bool split = (int)coarse.size() >= sys_->graph.span;
  for (auto& a : L)
    for (auto& b : R)
      if (split || admissible(*sys_, a + coarse + b)) out.emplace_back(a, b);
  return out;
}

std::string ConditionalCodebook::encode(const std::string& coarse, const std::string& left, const std::string& right,
                                        int n) const {
  auto refs = refinements(coarse);
  auto it = std::find(refs.begin(), refs.end(), std::make_pair(left, right));
  if (it == refs.end()) throw SpecError("refinement is not admissible");
  int len = length(n);
  i128 cap = 1;
  for (int i = 0; i < len; ++i) cap *= sch_->K;
  if ((i128)refs.size() > cap)
    throw CapacityError("scale " + std::to_string(k_) + ": " + std::to_string(refs.size()) + " refinements exceed K^" +
                        std::to_string(len));
  return to_kary(it - refs.begin(), sch_->K, len);
}

std::pair<std::string, std::string> ConditionalCodebook::decode(const std::string& coarse, const std::string& code,
                                                                 int n) const {
  if ((int)code.size() != length(n)) throw SpecError("conditional code has the wrong length");
  auto refs = refinements(coarse);
  i128 r = from_kary(code, sch_->K);
  if (r >= (i128)refs.size()) throw SpecError("code word outside the conditional codebook image");
  return refs[(size_t)r];
}

bool has_shorter_period_prefix(const std::string& w, int n1) {
  std::string pre;
  while ((int)pre.size() < n1) pre += w;
  pre.resize(n1);
  return least_period(pre) < (int)w.size();
}

PeriodicCode::PeriodicCode(const System& s, int K, int n1) : K_(K), n1_(n1) {
  if (!s.has_periodic_points()) return;
  i128 per = least_period_points(s, n1), cap = 1;
  for (int i = 0; i < n1 - 1; ++i) cap *= K;
  if (per >= cap) throw CapacityError("#Per_n1 = " + to_string(per) + " is not below K^(n1-1)");
  auto windows_of = [&](const std::string& w) {
    int n = (int)w.size();
    std::vector<std::string> out;
    std::string rep;
    while ((int)rep.size() < n1 + n) rep += w;
    for (int j = 0; j < n; ++j) out.push_back(rep.substr(j, n1));
    return out;
  };
  for (int n = 1; n <= n1; ++n) {
    auto orbs = enumerate_periodic(s, n).orbits;
    if (orbs.empty()) continue;
    auto cands = lyndon_words(K, n);
    size_t next = 0;
    for (auto& o : orbs) {
      for (; next < cands.size(); ++next) {
        if (n * n > n1 && has_shorter_period_prefix(cands[next], n1)) continue;
        // skip words whose n1-windows were already taken by a shorter code
        bool clash = false;
        for (auto& w : windows_of(cands[next])) clash = clash || windows_.count(w);
        if (!clash) break;
      }
      if (next >= cands.size()) throw CapacityError("periodic code exhausted at period " + std::to_string(n));
      int id = (int)orbits_.size();
      index_[o] = id;
      orbits_.push_back(o);
      codes_.push_back(cands[next++]);
      auto wins = windows_of(codes_.back());
      for (int j = 0; j < n; ++j)
        if (!windows_.emplace(wins[j], std::make_pair(id, j)).second) injective_ = false;
    }
  }
  if (!injective_) throw std::logic_error("periodic code: n1-prefix map is not injective");
}

const std::string& PeriodicCode::code_of(const std::string& orbit) const {
  auto it = index_.find(orbit);
  if (it == index_.end()) throw SpecError("orbit '" + orbit + "' has no periodic code");
  return codes_[it->second];
}

std::optional<std::pair<int, int>> PeriodicCode::lookup(const std::string& window) const {
  auto it = windows_.find(window);
  if (it == windows_.end()) return std::nullopt;
  return it->second;
}

bool PeriodicCode::injective() const { return injective_; }

std::string PeriodicCode::str() const {
  std::string out;
  for (size_t i = 0; i < orbits_.size(); ++i) out += orbits_[i] + " -> " + codes_[i] + "\n";
  return out;
}

}  // namespace mc
