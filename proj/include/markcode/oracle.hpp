#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "markcode/entropy.hpp"
#include "markcode/point.hpp"

namespace mc {

// Pointwise evaluation of the marker sets along the orbit of one point.
// U_k is the greedy tower: a candidate time enters U_k unless a candidate of
// smaller key within distance < n_k already did.
class MarkerOracle {
 public:
  MarkerOracle(const System& s, const Schedule& sch, PointRep x);

  const PointRep& point() const { return x_; }
  const Schedule& schedule() const { return sch_; }
  const System& system() const { return *sys_; }
  int kmax() const { return sch_.kmax(); }

  // window [t-r_k, t+r_k] has least period <= n_k
  bool pertilde(int k, int64_t t);
  int group(int k, int64_t t);  // 0: not a candidate, 1 or 2: candidate class
  bool U(int k, int64_t t);
  bool hull(int k, int64_t t);  // some U_k time within distance < n'_k

  // Beyond these bounds there are no U_k times (the tail is periodic with
  // period <= n_k). nullopt when the tail keeps producing returns.
  std::optional<int64_t> quiet_left(int k) const;   // no returns at t < bound
  std::optional<int64_t> quiet_right(int k) const;  // no returns at t >= bound

  // largest return <= t (nullopt: none, certified by the quiet bound)
  std::optional<int64_t> return_at_or_before(int k, int64_t t);
  std::optional<int64_t> return_at_or_after(int k, int64_t t);

  // least period and canonical orbit word of x around t (window of radius r_k)
  int local_period(int k, int64_t t);
  std::string local_orbit(int k, int64_t t);

  static int64_t scan_limit;

 private:
  int R(int k) const;
  std::string key_window(int k, int64_t t) const;
  const System* sys_;
  Schedule sch_;
  PointRep x_;
  std::vector<std::unordered_map<int64_t, char>> per_, per_left_, per_right_, grp_, u_;
};

}  // namespace mc
