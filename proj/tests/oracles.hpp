#pragma once
// Brute-force references that share no code with the library: they unfold
// points by hand, enumerate raw strings and multiply matrices directly.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline int64_t pmod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

// x_i for left/core@anchor/right, the left period aligned with the anchor
inline char coord(const std::string& left, const std::string& core, int64_t anchor, const std::string& right, int64_t i) {
  int64_t end = anchor + (int64_t)core.size();
  if (i >= anchor && i < end) return core[(size_t)(i - anchor)];
  if (i >= end) return right[(size_t)pmod(i - end, (int64_t)right.size())];
  return left[(size_t)pmod(i - anchor, (int64_t)left.size())];
}

// cells x_{t-m}..x_{t+m} for t in [a, b]
inline std::vector<std::string> cells(const std::string& left, const std::string& core, int64_t anchor,
                                      const std::string& right, int m, int64_t a, int64_t b) {
  std::vector<std::string> out;
  for (int64_t t = a; t <= b; ++t) {
    std::string w;
    for (int64_t i = t - m; i <= t + m; ++i) w += coord(left, core, anchor, right, i);
    out.push_back(w);
  }
  return out;
}

inline bool avoids(const std::string& w, const std::vector<std::string>& forbidden) {
  for (auto& f : forbidden)
    if (w.find(f) != std::string::npos) return false;
  return true;
}

// every binary string of length n avoiding the forbidden words (n small)
inline std::vector<std::string> words2(int n, const std::vector<std::string>& forbidden) {
  std::vector<std::string> out;
  for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
    std::string w;
    for (int i = n - 1; i >= 0; --i) w += ((v >> i) & 1) ? '1' : '0';
    if (avoids(w, forbidden)) out.push_back(w);
  }
  return out;
}

// golden mean: binary strings of length n with no "11"; closed form F_{n+2}
inline uint64_t fibonacci(int n) {
  uint64_t a = 0, b = 1;
  for (int i = 0; i < n; ++i) {
    uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// periodic points of period n (not necessarily least) of a 1-step binary
// SFT: strings w of length n whose cyclic closure avoids `forbidden`
inline uint64_t fix_count2(int n, const std::vector<std::string>& forbidden) {
  uint64_t c = 0;
  for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
    std::string w;
    for (int i = n - 1; i >= 0; --i) w += ((v >> i) & 1) ? '1' : '0';
    std::string ww = w + w + w;
    if (avoids(ww, forbidden)) ++c;
  }
  return c;
}

// trace of A^n for a small integer matrix, computed by naive multiplication
inline long long trace_power(std::vector<std::vector<long long>> A, int n) {
  size_t d = A.size();
  std::vector<std::vector<long long>> P(d, std::vector<long long>(d, 0));
  for (size_t i = 0; i < d; ++i) P[i][i] = 1;
  for (int e = 0; e < n; ++e) {
    std::vector<std::vector<long long>> Q(d, std::vector<long long>(d, 0));
    for (size_t i = 0; i < d; ++i)
      for (size_t k = 0; k < d; ++k)
        for (size_t j = 0; j < d; ++j) Q[i][j] += P[i][k] * A[k][j];
    P = Q;
  }
  long long t = 0;
  for (size_t i = 0; i < d; ++i) t += P[i][i];
  return t;
}

inline int least_period(const std::string& w) {
  for (size_t p = 1; p < w.size(); ++p) {
    bool ok = true;
    for (size_t i = 0; i + p < w.size() && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return (int)p;
  }
  return (int)w.size();
}

// smallest rotation, by trying them all
inline std::string min_rotation(const std::string& w) {
  std::string best = w;
  for (size_t i = 1; i < w.size(); ++i) best = std::min(best, w.substr(i) + w.substr(0, i));
  return best;
}

// orbits of least period n in a binary SFT, as minimal rotations
inline std::set<std::string> orbits2(int n, const std::vector<std::string>& forbidden) {
  std::set<std::string> out;
  for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
    std::string w;
    for (int i = n - 1; i >= 0; --i) w += ((v >> i) & 1) ? '1' : '0';
    if (!avoids(w + w + w, forbidden)) continue;
    std::string primitive = w.substr(0, (size_t)least_period(w + w));
    if ((int)primitive.size() != n) continue;
    out.insert(min_rotation(w));
  }
  return out;
}

}  // namespace oracle
