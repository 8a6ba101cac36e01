#include "markcode/system.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mc {

char letter(int v) {
  if (v < 0 || v >= 36) throw SpecError("letter value out of range");
  return v < 10 ? char('0' + v) : char('a' + v - 10);
}

int letter_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

int Graph::find(std::string_view w) const {
  auto it = std::lower_bound(states.begin(), states.end(), w,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == states.end() || *it != w) return -1;
  return int(it - states.begin());
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return std::string(s.substr(a, b - a));
}

// "[a, b, c]" -> {"a","b","c"}; nested brackets are kept intact.
std::vector<std::string> split_list(std::string_view v) {
  std::string s = trim(v);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw SpecError("expected a bracketed list, got '" + s + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw SpecError("unbalanced brackets in list");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

int to_int(const std::string& s) {
  if (s.empty()) throw SpecError("expected an integer");
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw SpecError("expected an integer, got '" + s + "'");
  for (size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw SpecError("expected an integer, got '" + s + "'");
  return std::stoi(s);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

void check_word(const std::string& w, int alphabet) {
  if (w.empty()) throw SpecError("empty word");
  for (char c : w) {
    int v = letter_value(c);
    if (v < 0 || v >= alphabet)
      throw SpecError("inconsistent alphabet: letter '" + std::string(1, c) + "' in '" + w + "'");
  }
}

void trim_to_essential(Graph& g) {
  int n = g.size();
  std::vector<char> alive(n, 1);
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (int v = 0; v < n; ++v)
    for (auto [c, t] : g.out[v]) {
      ++outdeg[v];
      ++indeg[t];
    }
  std::vector<std::vector<int>> in(n);
  for (int v = 0; v < n; ++v)
    for (auto [c, t] : g.out[v]) in[t].push_back(v);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = 0;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [c, t] : g.out[v])
      if (alive[t] && --indeg[t] == 0) {
        alive[t] = 0;
        stack.push_back(t);
      }
    for (int u : in[v])
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = 0;
        stack.push_back(u);
      }
  }
  std::vector<int> remap(n, -1);
  Graph h;
  h.span = g.span;
  for (int v = 0; v < n; ++v)
    if (alive[v]) {
      remap[v] = h.size();
      h.states.push_back(g.states[v]);
    }
  h.out.resize(h.states.size());
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (auto [c, t] : g.out[v])
      if (alive[t]) h.out[remap[v]].push_back({c, remap[t]});
  }
  g = std::move(h);
}

bool has_forbidden_suffix(const std::string& w, const std::vector<std::string>& forb) {
  for (auto& f : forb)
    if (f.size() <= w.size() && w.compare(w.size() - f.size(), f.size(), f) == 0) return true;
  return false;
}

Graph build_sft_graph(int alphabet, const std::vector<std::string>& forb) {
  size_t M = 0;
  for (auto& f : forb) M = std::max(M, f.size());
  Graph g;
  g.span = std::max<int>(1, int(M) - 1);
  double total = 1;
  for (int i = 0; i < g.span; ++i) total *= alphabet;
  if (total > 4e6) throw SpecError("forbidden words too long for the word-graph presentation");
  // all words of length span with no forbidden factor, built letter by letter
  std::vector<std::string> layer{""};
  for (int len = 0; len < g.span; ++len) {
    std::vector<std::string> next;
    for (auto& w : layer)
      for (int a = 0; a < alphabet; ++a) {
        std::string v = w + letter(a);
        if (!has_forbidden_suffix(v, forb)) next.push_back(v);
      }
    layer.swap(next);
  }
  std::sort(layer.begin(), layer.end());
  g.states = layer;
  g.out.resize(g.states.size());
  for (int v = 0; v < g.size(); ++v)
    for (int a = 0; a < alphabet; ++a) {
      std::string w = g.states[v] + letter(a);
      if (has_forbidden_suffix(w, forb)) continue;
      int t = g.find(std::string_view(w).substr(1));
      if (t >= 0) g.out[v].push_back({letter(a), t});
    }
  trim_to_essential(g);
  if (g.size() == 0) throw SpecError("empty subshift: no bi-infinite admissible sequence");
  return g;
}

}  // namespace

std::string primitive_root(std::string_view u) {
  size_t n = u.size();
  for (size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (size_t i = p; i < n && ok; ++i) ok = u[i] == u[i - p];
    if (ok) return std::string(u.substr(0, p));
  }
  return std::string(u);
}

int least_rotation_index(std::string_view s) {
  // Booth's algorithm
  int n = (int)s.size();
  if (n == 0) return 0;
  std::vector<int> f(2 * n, -1);
  int k = 0;
  for (int j = 1; j < 2 * n; ++j) {
    char sj = s[j % n];
    int i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

std::string least_rotation(std::string_view s) {
  int k = least_rotation_index(s);
  return std::string(s.substr(k)) + std::string(s.substr(0, k));
}

System make_sft(int alphabet, std::vector<std::string> forbidden) {
  if (alphabet < 1 || alphabet > 36) throw SpecError("alphabet size must be in 1..36");
  for (auto& f : forbidden) check_word(f, alphabet);
  System s;
  s.kind = Kind::Sft;
  s.alphabet = alphabet;
  s.forbidden = std::move(forbidden);
  s.graph = build_sft_graph(alphabet, s.forbidden);
  return s;
}

System make_sft_matrix(std::vector<std::vector<int>> m) {
  int A = (int)m.size();
  if (A < 1 || A > 36) throw SpecError("matrix size must be in 1..36");
  std::vector<std::string> forb;
  for (int a = 0; a < A; ++a) {
    if ((int)m[a].size() != A) throw SpecError("transition matrix must be square");
    for (int b = 0; b < A; ++b) {
      if (m[a][b] != 0 && m[a][b] != 1) throw SpecError("transition matrix must be 0/1");
      if (!m[a][b]) forb.push_back(std::string{letter(a), letter(b)});
    }
  }
  System s = make_sft(A, forb);
  s.matrix = std::move(m);
  return s;
}

System make_odometer(std::vector<int> base) {
  if (base.empty()) throw SpecError("odometer needs a nonempty base sequence");
  for (int p : base)
    if (p < 2) throw SpecError("odometer bases must be >= 2");
  System s;
  s.kind = Kind::Odometer;
  s.base = std::move(base);
  s.alphabet = 0;
  return s;
}

System make_orbit(int alphabet, std::string word) {
  check_word(word, alphabet);
  System s;
  s.kind = Kind::Orbit;
  s.alphabet = alphabet;
  s.word = word;
  std::string root = primitive_root(word);
  int p = (int)root.size();
  Graph g;
  g.span = p;
  std::vector<std::string> rots;
  for (int i = 0; i < p; ++i) rots.push_back(root.substr(i) + root.substr(0, i));
  g.states = rots;
  std::sort(g.states.begin(), g.states.end());
  g.out.resize(p);
  for (int i = 0; i < p; ++i) {
    int from = g.find(rots[i]);
    int to = g.find(rots[(i + 1) % p]);
    g.out[from].push_back({root[i], to});
  }
  s.graph = std::move(g);
  return s;
}

System golden_mean() { return make_sft(2, {"11"}); }
System full_shift(int alphabet) { return make_sft(alphabet, {}); }

System parse_system(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos)
      throw SpecError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(t.substr(0, colon));
    if (kv.count(key)) throw SpecError("line " + std::to_string(lineno) + ": duplicate key " + key);
    kv[key] = trim(t.substr(colon + 1));
  }
  auto need = [&](const char* k) -> std::string {
    auto it = kv.find(k);
    if (it == kv.end()) throw SpecError(std::string("missing key '") + k + "'");
    return it->second;
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (auto& [k, v] : kv) {
      bool ok = false;
      for (auto a : keys) ok = ok || k == a;
      if (!ok) throw SpecError("unknown key '" + k + "'");
    }
  };
  std::string kind = need("kind");
  if (kind == "sft") {
    allow({"kind", "alphabet", "forbidden", "matrix"});
    if (kv.count("matrix")) {
      if (kv.count("forbidden")) throw SpecError("give either 'forbidden' or 'matrix', not both");
      std::vector<std::vector<int>> m;
      for (auto& row : split_list(kv["matrix"])) {
        std::vector<int> r;
        for (auto& e : split_list(row)) r.push_back(to_int(e));
        m.push_back(r);
      }
      System s = make_sft_matrix(m);
      if (kv.count("alphabet") && to_int(kv["alphabet"]) != s.alphabet)
        throw SpecError("inconsistent alphabet: matrix size differs from 'alphabet'");
      return s;
    }
    int A = to_int(need("alphabet"));
    return make_sft(A, kv.count("forbidden") ? split_list(kv["forbidden"]) : std::vector<std::string>{});
  }
  if (kind == "odometer") {
    allow({"kind", "base"});
    std::vector<int> b;
    for (auto& e : split_list(need("base"))) b.push_back(to_int(e));
    return make_odometer(b);
  }
  if (kind == "orbit") {
    allow({"kind", "alphabet", "word"});
    return make_orbit(to_int(need("alphabet")), need("word"));
  }
  throw SpecError("unknown kind '" + kind + "'");
}

std::string serialize_system(const System& s) {
  std::string o;
  switch (s.kind) {
    case Kind::Sft:
      o = "kind: sft\nalphabet: " + std::to_string(s.alphabet) + "\n";
      if (!s.matrix.empty()) {
        o += "matrix: [";
        for (size_t i = 0; i < s.matrix.size(); ++i) o += (i ? ", " : "") + join_ints(s.matrix[i]);
        o += "]\n";
      } else {
        o += "forbidden: [";
        for (size_t i = 0; i < s.forbidden.size(); ++i) o += (i ? ", " : "") + s.forbidden[i];
        o += "]\n";
      }
      return o;
    case Kind::Odometer:
      return "kind: odometer\nbase: " + join_ints(s.base) + "\n";
    case Kind::Orbit:
      return "kind: orbit\nalphabet: " + std::to_string(s.alphabet) + "\nword: " + s.word + "\n";
  }
  return o;
}

bool admissible(const System& s, std::string_view w) {
  if (!s.symbolic()) throw SpecError("word admissibility needs a symbolic system");
  const Graph& g = s.graph;
  if ((int)w.size() < g.span) {
    for (auto& st : g.states)
      if (st.find(w) != std::string::npos) return true;
    return false;
  }
  int v = g.find(w.substr(0, g.span));
  for (size_t i = g.span; v >= 0 && i < w.size(); ++i) {
    int nxt = -1;
    for (auto [c, t] : g.out[v])
      if (c == w[i]) nxt = t;
    v = nxt;
  }
  return v >= 0;
}

}  // namespace mc
