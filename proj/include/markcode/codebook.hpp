#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "markcode/entropy.hpp"
#include "markcode/words.hpp"

namespace mc {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// K-ary code words are strings over the letters 0..K-1 (see letter()).
std::string to_kary(i128 value, int K, int length);
i128 from_kary(const std::string& digits, int K);

// Scale 1: admissible words of length n, ranked lexicographically, written
// with floor((1 - alpha/2) n) K-ary digits.
class FirstCodebook {
 public:
  FirstCodebook(const System& s, const Schedule& sch, int maxlen);
  int length(int n) const;
  i128 size(int n) const { return wc_.count(n); }
  std::string encode(const std::string& word) const;
  std::string decode(const std::string& code, int n) const;  // throws on codes outside the image

 private:
  const Schedule* sch_;
  WordCounter wc_;
};

// Scale k >= 2: the refinements of one coarse word (radius m_{k-1}) into
// words of radius m_k are the pairs (left, right) of admissible extensions
// of width m_k - m_{k-1}; they are ranked lexicographically.
class ConditionalCodebook {
 public:
  ConditionalCodebook(const System& s, const Schedule& sch, int k);
  int k() const { return k_; }
  int length(int n) const;  // floor(alpha n / 2^k)
  // all refinements of `coarse` in rank order; throws "unknown context" if coarse is not admissible
  std::vector<std::pair<std::string, std::string>> refinements(const std::string& coarse) const;
  std::string encode(const std::string& coarse, const std::string& left, const std::string& right, int n) const;
  std::pair<std::string, std::string> decode(const std::string& coarse, const std::string& code, int n) const;

 private:
  const System* sys_;
  const Schedule* sch_;
  int k_;
  int ext_;
};

// Equivariant injective code on the periodic orbits of least period <= n1.
class PeriodicCode {
 public:
  PeriodicCode(const System& s, int K, int n1);

  int n1() const { return n1_; }
  const std::vector<std::string>& orbits() const { return orbits_; }  // least rotations
  const std::string& code_of(const std::string& orbit) const;        // period word over 0..K-1
  // orbit index and phase j (window = code^inf starting at j) of an n1-window of codes
  std::optional<std::pair<int, int>> lookup(const std::string& window) const;

  // every (orbit, phase) has a distinct n1-window
  bool injective() const;
  std::string str() const;  // "orbit -> code" lines

 private:
  int K_, n1_;
  std::vector<std::string> orbits_, codes_;
  std::map<std::string, int> index_;
  std::map<std::string, std::pair<int, int>> windows_;
  bool injective_ = true;
};

// n1 prefix of w^inf is of the shape v...v v' with |v| < |w|
bool has_shorter_period_prefix(const std::string& w, int n1);

}  // namespace mc
