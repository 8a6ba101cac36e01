#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "markcode/system.hpp"

namespace mc {

// A bi-infinite sequence that is periodic on both ends:
//   ... left left | core | right right ...
// with core[0] sitting at coordinate `anchor`. Odometer points use `digits`
// (least significant first) instead.
struct PointRep {
  std::string left = "0";
  std::string core;
  std::string right = "0";
  int64_t anchor = 0;
  std::vector<int> digits;

  bool odometer() const { return !digits.empty(); }
  char at(int64_t i) const;
  int64_t core_begin() const { return anchor; }
  int64_t core_end() const { return anchor + (int64_t)core.size(); }
  bool operator==(const PointRep&) const = default;
};

PointRep periodic_point(std::string period, int64_t anchor = 0);

char coordinate(const PointRep& x, int64_t i);
// T x, i.e. (Tx)_i = x_{i+1}; for odometers, add one with carry.
PointRep shifted(const PointRep& x, int64_t t, const System* odo = nullptr);
std::string window(const PointRep& x, int64_t a, int64_t b);  // x_a..x_b inclusive

// Normal form: primitive periods, core trimmed where it repeats a tail.
PointRep normalized(const PointRep& x);

// every factor of the extension is admissible
bool valid_point(const System& s, const PointRep& x);

PointRep parse_point(std::string_view text);
std::string serialize_point(const PointRep& x);

// V-cell labels: entry n is x_{n-m}..x_{n+m}
std::vector<std::string> itinerary(const PointRep& x, int m, int64_t a, int64_t b);
// one tuple of cells per time
std::vector<std::vector<std::string>> product_coding(const PointRep& x, const std::vector<int>& radii,
                                                     int64_t a, int64_t b);

}  // namespace mc
