#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "markcode/codec.hpp"
#include "markcode/point.hpp"
#include "markcode/rational.hpp"

namespace mc {

// exact == false means a sup/lim truncated at `horizon`
struct MetricValue {
  Rational value;
  bool exact = false;
  int64_t horizon = 0;
};

// 2^-k, or 0 when k < 0
struct Dyadic {
  int64_t k = -1;
  bool zero() const { return k < 0; }
  double to_double() const;
  std::string str() const;  // "0" or "2^-k"
  bool operator==(const Dyadic&) const = default;
};

// 2^-k, k the least i >= 0 with x_i != y_i or x_-i != y_-i
Dyadic cantor_distance(const PointRep& x, const PointRep& y);

// sup_{n >= N} #{|i| <= n : x_i != y_i} / (2n + 1). Exact through the
// periodic tails when the tail periods are small enough, else up to H.
MetricValue dN_distance(const PointRep& x, const PointRep& y, int64_t N, int64_t H);
MetricValue besicovitch_estimate(const PointRep& x, const PointRep& y, int64_t H);
// finite windows around 0; sup over N <= n <= H with H the common radius
MetricValue dN_distance(const SymbolStream& u, const SymbolStream& v, int64_t N);

// An encoded window whose two ends are periodic, read as a point over the
// stream symbols. `check` symbols at each end must repeat the detected period.
PointRep stream_point(const SymbolStream& s, int64_t check = 600);

struct EmpiricalMeasure {
  int L = 1;
  int64_t n = 0;                          // number of sampled positions
  std::map<std::string, int64_t> counts;  // L-words
  // frequency of the cylinder of a word of length <= L (left marginal)
  Rational freq(const std::string& w) const;
};

// 1/n sum_{0 <= j < n} delta at the L-word x[start + j, start + j + L)
EmpiricalMeasure empirical_measure(const PointRep& x, int L, int64_t n, int64_t start = 0);
EmpiricalMeasure empirical_measure(const SymbolStream& s, int L, int64_t n, int64_t start);
// orbit average of the periodic point with period word w
EmpiricalMeasure periodic_measure(const std::string& w, int L);

// Cylinders A_1, A_2, ... by length, then lexicographic in `alphabet`
// order; the first `terms` of them enter d_*.
struct CylinderEnumeration {
  std::string alphabet;
  int terms = 64;
  std::vector<std::string> cylinders() const;
  std::string str() const;
};

Rational measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const CylinderEnumeration& A);
Rational hausdorff_distance(const std::vector<EmpiricalMeasure>& S, const std::vector<EmpiricalMeasure>& T,
                            const CylinderEnumeration& A);

struct ReportRow {
  std::string point;
  int scale = 0;
  std::string metric;
  double value = 0;
  bool exact = false;
  int64_t horizon = 0;
};

struct ReportOptions {
  int cylinder_length = 3;
  int terms = 64;
  int64_t margin = 200;  // encoded window: core extent + modulus + margin
};

// For each point and scale: d_N(psi_k x, psi x) at N = n_k^2, d_inf, d_* and
// d_H of the empirical measures, the bound d_* <= L d_N, and coverage of psi.
std::vector<ReportRow> convergence_report(const Pipeline& p, const std::vector<std::pair<std::string, PointRep>>& points,
                                          const ReportOptions& opt = {});
// tab separated: point scale metric value exact horizon
std::string format_report(const std::vector<ReportRow>& rows);

}  // namespace mc
