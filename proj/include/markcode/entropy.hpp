#pragma once
#include <optional>
#include <string>
#include <vector>

#include "markcode/point.hpp"
#include "markcode/rational.hpp"
#include "markcode/system.hpp"

namespace mc {

struct HtopEstimate {
  double upper = 0;      // min_{n<=nmax} log(#W_n)/n
  int argmin = 0;
  double spectral = 0;   // log of the spectral radius of the word graph
};
HtopEstimate htop_estimate(const System& s, int nmax);

// Largest number of radius-mp itinerary words refining one radius-m
// itinerary word of length n (cells are centred cylinders).
i128 conditional_count(const System& s, int m, int mp, int n);
// brute-force version used as a cross-check on small n
i128 conditional_count_brute(const System& s, int m, int mp, int n);

struct PerGrowth {
  i128 max_count = 0;  // most least-period-n points sharing one V^n cell
  double value = 0;    // (1/n) log max_count (0 when max_count <= 1)
};
PerGrowth per_growth_in_cell(const System& s, int m, int n);

struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Schedule {
  int K = 2;
  Rational alpha;
  std::vector<int> m, n, nprime, r;

  int kmax() const { return (int)n.size(); }
  double a() const { return alpha.to_double(); }
};

struct ScheduleOptions {
  int headroom = 8;  // alpha * n_k >= headroom * 2^k, applied from scale 2 on
  int ncert = 64;    // explicit range; analytic tail beyond
  int search_limit = 100000;
  std::optional<Rational> alpha;  // default: log K - log(spectral radius)
};

Schedule build_schedule(const System& s, int K, int kmax, const ScheduleOptions& opt = {});

struct InequalityCheck {
  std::string family;  // "capacity", "conditional", "periodic-growth", "periodic-code", "growth"
  int scale = 0;
  bool ok = true;
  std::string detail;
};
std::vector<InequalityCheck> verify_schedule(const System& s, const Schedule& sch, const ScheduleOptions& opt = {});

std::string serialize_schedule(const Schedule& s);
Schedule parse_schedule(const std::string& text);

struct FullnessResult {
  bool full = true;
  int failed_at = 0;  // first n with #W_n != K^n
  i128 count = 0;     // #W_n at that n
};
FullnessResult appendix_fullness_check(const System& s, int K, int nmax);
// an admissible point whose coordinates -n..n spell `target` (|target| = 2n+1)
std::optional<PointRep> appendix_witness(const System& s, const std::string& target);

}  // namespace mc
