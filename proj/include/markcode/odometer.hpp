#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "markcode/point.hpp"
#include "markcode/system.hpp"

namespace mc {

// Clopen subsets of an odometer, written over digit-prefix cylinders of a
// common depth d: a set is a list of residues modulo p_1 * ... * p_d.
// Depth is kept minimal, as for ClopenSet.
class OdoClopen {
 public:
  explicit OdoClopen(const System& s);  // empty
  OdoClopen(const System& s, int depth, std::vector<int64_t> residues);

  static OdoClopen whole(const System& s);
  // points whose first `digits.size()` digits equal `digits`
  static OdoClopen prefix(const System& s, const std::vector<int>& digits);

  const System& system() const { return *sys_; }
  int depth() const { return d_; }
  const std::vector<int64_t>& residues() const { return res_; }
  bool empty() const { return res_.empty(); }
  size_t size() const { return res_.size(); }
  int64_t modulus() const;

  std::vector<int64_t> residues_at(int depth) const;
  bool contains(const PointRep& x, int64_t t) const;

  OdoClopen shift(int64_t i) const;
  OdoClopen operator|(const OdoClopen& o) const;
  OdoClopen operator&(const OdoClopen& o) const;
  OdoClopen operator-(const OdoClopen& o) const;
  OdoClopen complement() const;
  bool subset_of(const OdoClopen& o) const { return (*this - o).empty(); }
  bool operator==(const OdoClopen& o) const { return d_ == o.d_ && res_ == o.res_; }
  std::string str() const;

 private:
  void canonicalize();
  const System* sys_;
  int d_ = 0;
  std::vector<int64_t> res_;
};

int64_t odometer_modulus(const System& s, int depth);
int64_t odometer_value(const System& s, const PointRep& x, int depth);  // residue of the prefix
std::vector<int> odometer_digits(const System& s, int64_t residue, int depth);

}  // namespace mc
