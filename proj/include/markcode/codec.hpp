#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "markcode/layout.hpp"
#include "markcode/pipeline.hpp"

namespace mc {

struct MalformedStream : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbols of psi_k(x) or psi(x) on [a, b]. res[i] is the scale at which the
// symbol became final; kmax + 1 marks '?'.
struct SymbolStream {
  int64_t a = 0, b = -1;
  std::string syms;
  std::vector<int> res;

  int64_t size() const { return b - a + 1; }
  char at(int64_t t) const { return syms.at((size_t)(t - a)); }
  bool contains(int64_t t) const { return t >= a && t <= b; }
  SymbolStream slice(int64_t from, int64_t to) const;
};

// "[a,b]" header line, then one whitespace separated token per position:
// B1 B2 LB RB DB FR UN or a digit 1..K (letter value plus one).
std::string serialize_stream(const SymbolStream& s);
SymbolStream parse_stream(const std::string& text, int K);

SymbolStream encode_k(Layout& L, int k, int64_t a, int64_t b);
SymbolStream encode_limit(Layout& L, int64_t a, int64_t b);

// one-shot helpers that build the oracle and layout
SymbolStream encode_k(const Pipeline& p, const PointRep& x, int k, int64_t a, int64_t b);
SymbolStream encode_limit(const Pipeline& p, const PointRep& x, int64_t a, int64_t b);

struct DecodeResult {
  int k = 1;
  int64_t a = 0, b = -1;             // certified subwindow
  std::string letters;               // x on [a - m_k, b + m_k]
  SymbolStream psi;                  // psi_k form on the certified subwindow
  std::vector<std::vector<std::string>> itineraries;  // [l-1][t-a]: V_l cell at t
  std::vector<std::string> orbits;   // orbits read in singular 1-blocks, in order
};

// Recovers x by reading 1-filling words and periodic code prefixes, then
// checks the scale-2 brackets and conditional codes against it.
DecodeResult decode_k(const SymbolStream& s, const Pipeline& p, int k);

// V_k cell at time 0; the stream must cover [-M_k, M_k].
std::string invert(const SymbolStream& s, const Pipeline& p, int k);

}  // namespace mc
