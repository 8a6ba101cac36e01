#pragma once

#include <map>
#include <string>
#include <vector>

#include "markcode/clopen.hpp"
#include "markcode/odometer.hpp"

namespace mc {

struct SeparationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Width-(2r+1) cylinders around the periodic points of period <= n, each
// tagged with the (least rotation of the) orbit it belongs to.
struct PeriodicNeighborhood {
  ClopenSet set;
  std::vector<std::string> orbits;             // least rotations, sorted by period then word
  std::map<std::string, int> orbit_of;         // pattern -> index into orbits
};
PeriodicNeighborhood periodic_neighborhood(const System& s, int n, int r);

// Scale parameters the towers need. r[k] is the radius of the periodic window.
struct TowerParams {
  std::vector<int> n, nprime, r;
  int kmax() const { return (int)n.size(); }
  static TowerParams from(std::vector<int> n, std::vector<int> r);
};

template <class C>
struct MarkerTowerT {
  explicit MarkerTowerT(const System& s) : U(s), per(s), hull(s), per_eps(s) {}
  int k = 0;
  int n = 0, nprime = 0;
  C U;
  C per;      // the periodic window set P~er_k (empty for odometers)
  C hull;     // union of T^i U over |i| < n'_k
  C per_eps;  // complement of the hull
  std::vector<C> W;  // greedy input partition, in processing order
  std::vector<std::string> pieces;  // "scale:group:index" labels of W, same order
};
using MarkerTower = MarkerTowerT<ClopenSet>;
using OdoTower = MarkerTowerT<OdoClopen>;

std::vector<MarkerTower> build_towers(const System& s, const TowerParams& p);
std::vector<OdoTower> build_odometer_towers(const System& s, const TowerParams& p);

struct TowerCheck {
  int scale = 0;
  std::string invariant;  // disjointness, covering, nesting, union
  bool ok = true;
  std::string detail;     // offending cylinder when ok is false
};
// `prev` is the tower of scale k-1 (nullptr at k = 1)
std::vector<TowerCheck> verify_tower(const MarkerTower& t, const MarkerTower* prev, bool aperiodic);
std::vector<TowerCheck> verify_tower(const OdoTower& t, const OdoTower* prev, bool aperiodic);

// cylinder list serialization, one scale per line: "k: r=<radius> {w1, w2}"
std::string serialize_towers(const std::vector<MarkerTower>& t);
std::vector<ClopenSet> parse_tower_sets(const System& s, const std::string& text);

}  // namespace mc
