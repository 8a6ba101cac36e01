#include "markcode/codec.hpp"

#include <algorithm>
#include <sstream>

namespace mc {

namespace {

int64_t pmod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

bool is_digit(char c, int K) {
  int v = letter_value(c);
  return v >= 0 && v < K;
}

const char* token_of(char c) {
  switch (c) {
    case sym::B1: return "B1";
    case sym::B2: return "B2";
    case sym::LB: return "LB";
    case sym::RB: return "RB";
    case sym::DB: return "DB";
    case sym::FR: return "FR";
    case sym::UN: return "UN";
    default: return nullptr;
  }
}

// A 1-block as seen in the stream. Missing ends are outside the window.
struct Block1 {
  int64_t b = kNegInf, e = kPosInf;
  bool regular = false;
};

class Reader {
 public:
  Reader(const SymbolStream& s, const Pipeline& p) : s_(s), sch_(p.schedule), codes_(*p.codes) {
    n1_ = sch_.n[0];
    x_.assign((size_t)s.size(), '\0');
    for (int64_t t = s.a; t <= s.b; ++t) {
      char c = s.at(t);
      if (c == sym::B1) bars_.push_back(t);
      else if (!sym::is_token(c) && !is_digit(c, sch_.K))
        throw MalformedStream("symbol '" + std::string(1, c) + "' at " + std::to_string(t) + " is not in the output alphabet");
    }
  }

  void scale1() {
    for (size_t i = 0; i + 1 < bars_.size(); ++i) {
      int64_t p = bars_[i], q = bars_[i + 1];
      if (q - p < n1_)
        throw MalformedStream("1-markers at " + std::to_string(p) + " and " + std::to_string(q) + " are closer than n_1");
      if (q - p < 2 * n1_) regular_block(p, q);
      else singular_from(p + 1, p, q);
    }
    if (bars_.empty()) {
      unanchored();
      return;
    }
    int64_t first = bars_.front(), last = bars_.back();
    if (first - s_.a >= 2 * n1_) singular_from(first - n1_, s_.a, first);
    if (s_.b - last >= 2 * n1_ - 1) singular_from(last + 1, last, s_.b + 1);
  }

  // brackets and conditional codes of regular 2-blocks, checked against x
  void scale2(bool exact_free) {
    std::vector<int64_t> mus;
    for (int64_t t = s_.a; t <= s_.b; ++t)
      if (sym::is_bracket(s_.at(t))) mus.push_back(t);
    for (size_t i = 0; i + 1 < mus.size(); ++i) {
      int64_t mu = mus[i], nu = mus[i + 1];
      char c = s_.at(mu), d = s_.at(nu);
      bool next_regular = c == sym::DB || c == sym::LB;
      bool prev_regular = d == sym::DB || d == sym::RB;
      if (next_regular != prev_regular)
        throw MalformedStream("brackets at " + std::to_string(mu) + " and " + std::to_string(nu) + " disagree on the block class");
      if (next_regular) regular_block2(mu, nu, exact_free);
    }
  }

  void psi1(SymbolStream& out, int64_t a, int64_t b) const {
    out.a = a;
    out.b = b;
    out.syms.clear();
    out.res.clear();
    for (int64_t t = a; t <= b; ++t) {
      char c = sym::FR;
      int r = 2;
      Block1 B = block_of(t);
      if (t == B.b) {
        c = sym::B1;
        r = 1;
      } else if (B.regular) {
        auto it = fill_.find(B.b);
        if (t - B.b <= (int64_t)it->second.size()) {
          c = it->second[(size_t)(t - B.b - 1)];
          r = 1;
        }
      } else {
        auto it = std::upper_bound(period_of_.begin(), period_of_.end(), std::make_pair(t, std::string(1, '\x7f')));
        if (it == period_of_.begin()) throw MalformedStream("no periodic code at " + std::to_string(t));
        --it;
        const std::string& w = it->second;
        c = w[(size_t)pmod(t - it->first, (int64_t)w.size())];
        r = 1;
      }
      out.syms += c;
      out.res.push_back(r);
    }
  }

  bool known(int64_t a, int64_t b) const {
    if (a < s_.a || b > s_.b) return false;
    for (int64_t t = a; t <= b; ++t)
      if (!x_[(size_t)(t - s_.a)]) return false;
    return true;
  }
  std::string x(int64_t a, int64_t b) const {
    return b < a ? std::string() : x_.substr((size_t)(a - s_.a), (size_t)(b - a + 1));
  }
  const std::vector<std::string>& orbits() const { return orbits_; }

 private:
  void set(int64_t t, char c) {
    if (t < s_.a || t > s_.b) return;
    char& slot = x_[(size_t)(t - s_.a)];
    if (slot && slot != c) throw MalformedStream("conflicting letters decoded at " + std::to_string(t));
    slot = c;
  }

  std::string digits(int64_t a, int64_t b, const char* what) const {
    std::string w;
    for (int64_t t = a; t <= b; ++t) {
      if (t < s_.a || t > s_.b) throw MalformedStream(std::string(what) + " leaves the window");
      char c = s_.at(t);
      if (!is_digit(c, sch_.K))
        throw MalformedStream(std::string(what) + " at " + std::to_string(t) + " holds '" + std::string(1, c) + "'");
      w += c;
    }
    return w;
  }

  void regular_block(int64_t p, int64_t q) {
    int len = codes_.first.length((int)(q - p));
    std::string code = digits(p + 1, p + len, "1-filling");
    std::string word;
    try {
      word = codes_.first.decode(code, (int)(q - p));
    } catch (const SpecError& e) {
      throw MalformedStream("block [" + std::to_string(p) + "," + std::to_string(q) + "): " + e.what());
    }
    fill_[p] = code;
    for (int64_t t = p; t < q; ++t) set(t, word[(size_t)(t - p)]);
  }

  // the n_1 digits starting at `at` identify the orbit and its phase;
  // fills x on [from, to) and records the code phase there
  void singular_from(int64_t at, int64_t from, int64_t to) {
    std::string w = digits(at, at + n1_ - 1, "periodic code window");
    auto hit = codes_.periodic.lookup(w);
    if (!hit) throw MalformedStream("window '" + w + "' at " + std::to_string(at) + " is not a periodic code prefix");
    const std::string& orbit = codes_.periodic.orbits()[(size_t)hit->first];
    const std::string& code = codes_.periodic.code_of(orbit);
    int64_t m = (int64_t)orbit.size(), j = hit->second;
    for (int64_t t = std::max(from, s_.a); t < std::min(to, s_.b + 1); ++t) set(t, orbit[(size_t)pmod(t - at + j, m)]);
    // code word rotated so that index 0 sits at the first covered position
    int64_t st = std::max(from, s_.a);
    std::string rot;
    for (int64_t i = 0; i < m; ++i) rot += code[(size_t)pmod(st - at + j + i, m)];
    period_of_.emplace_back(st, rot);
    std::sort(period_of_.begin(), period_of_.end());
    orbits_.push_back(orbit);
  }

  // no 1-marker at all: a single singular 1-block covers the window
  void unanchored() {
    if (s_.size() < n1_) return;
    for (int64_t at = s_.a; at + n1_ - 1 <= s_.b; ++at) {
      std::string w;
      for (int64_t t = at; t < at + n1_; ++t) w += s_.at(t);
      auto hit = codes_.periodic.lookup(w);
      if (!hit) continue;
      const std::string& code = codes_.periodic.code_of(codes_.periodic.orbits()[(size_t)hit->first]);
      int64_t m = (int64_t)code.size();
      bool ok = true;
      for (int64_t t = s_.a; t <= s_.b && ok; ++t)
        if (is_digit(s_.at(t), sch_.K)) ok = s_.at(t) == code[(size_t)pmod(t - at + hit->second, m)];
      if (ok) {
        singular_from(at, kNegInf, kPosInf);
        return;
      }
    }
    throw MalformedStream("stream has no 1-marker and no consistent periodic code");
  }

  Block1 block_of(int64_t t) const {
    Block1 B;
    auto it = std::upper_bound(bars_.begin(), bars_.end(), t);
    if (it != bars_.end()) B.e = *it;
    if (it != bars_.begin()) B.b = *(it - 1);
    B.regular = B.b != kNegInf && B.e != kPosInf && B.e - B.b < 2 * n1_;
    return B;
  }

  void regular_block2(int64_t mu, int64_t nu, bool exact_free) {
    Block1 Bm = block_of(mu), Bn = block_of(nu);
    if (Bm.b == kNegInf || Bn.b == kNegInf) return;  // block start outside the window
    int64_t b = Bm.regular ? Bm.b : mu, e = Bn.regular ? Bn.b : nu;
    Rational a4 = sch_.alpha / Rational(4);
    std::vector<int64_t> pool;
    for (int64_t p = mu + 1; p < e;) {
      Block1 v = block_of(p);
      if (v.e == kPosInf) return;
      if (v.regular) {
        int len = codes_.first.length((int)(v.e - v.b));
        for (int64_t t = std::max(p, v.b + len + 1); t < std::min(v.e, e); ++t) pool.push_back(t);
      } else if (v.b != kNegInf) {
        int64_t vb = std::max(v.b, b), ve = std::min(v.e, e), len = ve - vb;
        int64_t q = (int64_t)floor_mul(a4, len);
        if (q >= 1)
          for (int64_t l = q; l < len - n1_; l += q) {
            int64_t pos = vb + l;
            if (l <= n1_ || pos <= mu || pos >= e) continue;
            if (pos - v.b > n1_ && v.e - pos > n1_) pool.push_back(pos);
          }
      } else {
        return;
      }
      p = v.e;
    }
    std::sort(pool.begin(), pool.end());
    const ConditionalCodebook& cb = codes_.cond.at(0);
    int n = (int)(e - b), F = cb.length(n);
    if ((int)pool.size() < F) throw MalformedStream("2-block at " + std::to_string(b) + " has too few free positions");
    std::string code;
    for (int i = 0; i < F; ++i) {
      char c = s_.at(pool[(size_t)i]);
      if (!is_digit(c, sch_.K)) throw MalformedStream("2-filling at " + std::to_string(pool[(size_t)i]) + " is not a digit");
      code += c;
    }
    if (exact_free)
      for (size_t i = (size_t)F; i < pool.size(); ++i) {
        char c = s_.at(pool[i]);
        if (c != sym::FR && c != sym::UN)
          throw MalformedStream("2-free position " + std::to_string(pool[i]) + " holds '" + std::string(1, c) + "'");
      }
    int mc = sch_.m[0], mk = sch_.m[1];
    if (!known(b - mk, e - 1 + mk)) return;
    std::pair<std::string, std::string> ref;
    try {
      ref = cb.decode(x(b - mc, e - 1 + mc), code, n);
    } catch (const SpecError& err) {
      throw MalformedStream("2-block [" + std::to_string(b) + "," + std::to_string(e) + "): " + err.what());
    }
    if (ref.first != x(b - mk, b - mc - 1) || ref.second != x(e + mc, e + mk - 1))
      throw MalformedStream("2-block [" + std::to_string(b) + "," + std::to_string(e) + "): conditional code disagrees with the 1-filling");
  }

  const SymbolStream& s_;
  const Schedule& sch_;
  const CodeSet& codes_;
  int n1_;
  std::string x_;
  std::vector<int64_t> bars_;
  std::map<int64_t, std::string> fill_;
  std::vector<std::pair<int64_t, std::string>> period_of_;
  std::vector<std::string> orbits_;
};

}  // namespace

SymbolStream SymbolStream::slice(int64_t from, int64_t to) const {
  if (from < a || to > b) throw std::out_of_range("slice outside the stream window");
  SymbolStream s;
  s.a = from;
  s.b = to;
  s.syms = syms.substr((size_t)(from - a), (size_t)(to - from + 1));
  s.res.assign(res.begin() + (from - a), res.begin() + (to - a + 1));
  return s;
}

std::string serialize_stream(const SymbolStream& s) {
  std::string out = "[" + std::to_string(s.a) + "," + std::to_string(s.b) + "]\n";
  for (size_t i = 0; i < s.syms.size(); ++i) {
    if (i) out += (i % 32 == 0) ? '\n' : ' ';
    if (const char* t = token_of(s.syms[i])) out += t;
    else out += std::to_string(letter_value(s.syms[i]) + 1);
  }
  return out + "\n";
}

SymbolStream parse_stream(const std::string& text, int K) {
  std::istringstream in(text);
  std::string header;
  if (!(in >> header) || header.size() < 5 || header.front() != '[' || header.back() != ']')
    throw MalformedStream("stream header must be [a,b]");
  auto comma = header.find(',');
  if (comma == std::string::npos) throw MalformedStream("stream header must be [a,b]");
  SymbolStream s;
  try {
    s.a = std::stoll(header.substr(1, comma - 1));
    s.b = std::stoll(header.substr(comma + 1, header.size() - comma - 2));
  } catch (const std::exception&) {
    throw MalformedStream("stream header must be [a,b]");
  }
  std::string tok;
  while (in >> tok) {
    char c = 0;
    for (char t : {sym::B1, sym::B2, sym::LB, sym::RB, sym::DB, sym::FR, sym::UN})
      if (tok == token_of(t)) c = t;
    if (!c) {
      int v = 0;
      try {
        size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) v = 0;
      } catch (const std::exception&) {
        v = 0;
      }
      if (v < 1 || v > K) throw MalformedStream("unknown stream token '" + tok + "'");
      c = letter(v - 1);
    }
    s.syms += c;
    s.res.push_back(0);
  }
  if ((int64_t)s.syms.size() != s.size())
    throw MalformedStream("stream header covers " + std::to_string(s.size()) + " positions but " +
                          std::to_string(s.syms.size()) + " tokens follow");
  return s;
}

SymbolStream encode_k(Layout& L, int k, int64_t a, int64_t b) {
  SymbolStream s;
  s.a = a;
  s.b = b;
  for (int64_t t = a; t <= b; ++t) {
    LayoutCell c = L.cell(k, t);
    s.syms += c.symbol;
    s.res.push_back(c.role == Role::Free ? k + 1 : c.scale);
  }
  return s;
}

SymbolStream encode_limit(Layout& L, int64_t a, int64_t b) {
  int kmax = L.oracle().kmax();
  SymbolStream s = encode_k(L, kmax, a, b);
  for (size_t i = 0; i < s.syms.size(); ++i)
    if (s.syms[i] == sym::FR) s.syms[i] = sym::UN;
  return s;
}

namespace {
void need_codec(const Pipeline& p) {
  if (!p.codes) throw SpecError("the codec works on symbolic systems; this pipeline has no codebooks");
}
}  // namespace

SymbolStream encode_k(const Pipeline& p, const PointRep& x, int k, int64_t a, int64_t b) {
  need_codec(p);
  MarkerOracle o(p.system, p.schedule, x);
  Layout L(o, *p.codes);
  return encode_k(L, k, a, b);
}

SymbolStream encode_limit(const Pipeline& p, const PointRep& x, int64_t a, int64_t b) {
  need_codec(p);
  MarkerOracle o(p.system, p.schedule, x);
  Layout L(o, *p.codes);
  return encode_limit(L, a, b);
}

DecodeResult decode_k(const SymbolStream& s, const Pipeline& p, int k) {
  need_codec(p);
  if (k < 1 || k > p.kmax()) throw SpecError("decode scale out of range");
  if (k > 2) throw SpecError("decoding is implemented for scales 1 and 2");
  Reader R(s, p);
  R.scale1();
  if (k >= 2) R.scale2(k == p.kmax());
  DecodeResult out;
  out.k = k;
  int64_t M = p.modulus(k);
  out.a = s.a + M;
  out.b = s.b - M;
  if (out.a > out.b)
    throw SpecError("stream of length " + std::to_string(s.size()) + " is shorter than the decode modulus 2*" + std::to_string(M));
  int mk = p.schedule.m[k - 1];
  if (!R.known(out.a - mk, out.b + mk))
    throw MalformedStream("letters on [" + std::to_string(out.a) + "," + std::to_string(out.b) + "] are not determined by the stream");
  out.letters = R.x(out.a - mk, out.b + mk);
  out.itineraries.resize((size_t)k);
  for (int l = 1; l <= k; ++l) {
    int ml = p.schedule.m[l - 1];
    for (int64_t t = out.a; t <= out.b; ++t) out.itineraries[(size_t)l - 1].push_back(R.x(t - ml, t + ml));
  }
  if (k == 1) R.psi1(out.psi, out.a, out.b);
  else out.psi = s.slice(out.a, out.b);
  out.orbits = R.orbits();
  return out;
}

std::string invert(const SymbolStream& s, const Pipeline& p, int k) {
  int64_t M = p.modulus(k);
  if (s.a > -M || s.b < M)
    throw SpecError("invert needs the stream to cover the decode modulus M_" + std::to_string(k) + " = " + std::to_string(M) + ", i.e. [-" + std::to_string(M) + "," + std::to_string(M) + "], got [" +
                    std::to_string(s.a) + "," + std::to_string(s.b) + "]");
  // a symmetric window certifies its centre
  int64_t r = std::min(-s.a, s.b);
  DecodeResult d = decode_k(s.slice(-r, r), p, k);
  return d.itineraries[(size_t)k - 1][(size_t)(0 - d.a)];
}

}  // namespace mc
