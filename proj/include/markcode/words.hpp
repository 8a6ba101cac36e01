#pragma once
#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "markcode/rational.hpp"
#include "markcode/system.hpp"

namespace mc {

// Transfer matrix of the word graph (vertex adjacency, entries 0/1).
Eigen::MatrixXd transfer_matrix(const System& s);
Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> transfer_matrix_int(const System& s);
double spectral_radius(const System& s);

// Exact counting, ranking and unranking of admissible words of a fixed
// length, lexicographic order. Counts are exact up to about 2^125.
class WordCounter {
 public:
  WordCounter(const System& s, int maxlen);

  int maxlen() const { return maxlen_; }
  i128 count(int n) const;
  i128 completions(std::string_view prefix, int n) const;
  i128 rank(std::string_view w) const;  // -1 if not admissible
  std::string unrank(i128 r, int n) const;
  const System& system() const { return *sys_; }

 private:
  int state_of(std::string_view w) const;  // state reached after reading w, -1 if none
  const System* sys_;
  int maxlen_;
  std::vector<std::vector<i128>> paths_;  // paths_[t][v]: paths of length t leaving v
};

std::vector<std::string> enumerate_words(const System& s, int n);
i128 count_words(const System& s, int n);

struct PeriodicCount {
  std::vector<std::string> orbits;  // least rotations of primitive period words, sorted
  i128 fixed = 0;                   // #Fix(sigma^n) counted on the graph
};
PeriodicCount enumerate_periodic(const System& s, int n);
i128 fix_count_trace(const System& s, int n);  // trace of A^n
i128 least_period_points(const System& s, int n);  // n * #orbits of least period n

// Primitive K-ary necklaces of length n (Lyndon words), lexicographic.
std::vector<std::string> lyndon_words(int K, int n);

// least p >= 1 such that w[i] == w[i+p] for all valid i
int least_period(std::string_view w);

}  // namespace mc
