#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "markcode/point.hpp"
#include "markcode/system.hpp"

namespace mc {

struct WidthOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite union of cylinders, stored as the set of admissible centred words
// x_{-r}..x_{r} of one common radius r. The stored radius is always the
// smallest one that represents the set, so equal sets compare equal.
class ClopenSet {
 public:
  static int width_cap;  // largest radius any operation may produce

  explicit ClopenSet(const System& s);  // empty set
  ClopenSet(const System& s, int radius, std::vector<std::string> patterns);

  static ClopenSet whole(const System& s);
  // {x : x_{offset+j} = pattern_j}
  static ClopenSet cylinder(const System& s, int64_t offset, const std::string& pattern);

  const System& system() const { return *sys_; }
  int radius() const { return r_; }
  const std::vector<std::string>& patterns() const { return pats_; }
  bool empty() const { return pats_.empty(); }
  size_t size() const { return pats_.size(); }

  // same set written at a larger radius (not canonical)
  std::vector<std::string> patterns_at(int radius) const;
  bool contains_word(const std::string& centred) const;  // centred word of any radius >= r
  bool contains(const PointRep& x, int64_t t) const;     // T^t x in the set

  ClopenSet shift(int64_t i) const;  // T^i A
  ClopenSet operator|(const ClopenSet& o) const;
  ClopenSet operator&(const ClopenSet& o) const;
  ClopenSet operator-(const ClopenSet& o) const;
  ClopenSet complement() const;
  bool subset_of(const ClopenSet& o) const { return (*this - o).empty(); }
  bool operator==(const ClopenSet& o) const { return r_ == o.r_ && pats_ == o.pats_; }

  std::string str() const;  // "r=<radius> {w1, w2, ...}"

 private:
  void canonicalize();
  const System* sys_;
  int r_ = 0;
  std::vector<std::string> pats_;
};

// admissible one-letter extensions of a centred word
std::vector<std::string> extend_both(const System& s, const std::vector<std::string>& words);
std::vector<std::string> extend_left(const System& s, const std::vector<std::string>& words);
std::vector<std::string> extend_right(const System& s, const std::vector<std::string>& words);

}  // namespace mc
