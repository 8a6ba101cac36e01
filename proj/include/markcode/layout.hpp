#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "markcode/codebook.hpp"
#include "markcode/oracle.hpp"

namespace mc {

// Stream symbols. Digits 0..K-1 are letters '0','1',...; the tokens below
// are the block delimiters and the two placeholders.
namespace sym {
constexpr char B1 = '|';   // scale-1 marker
constexpr char B2 = '#';   // scale-2 marker (aperiodic) / boundary between two singular blocks
constexpr char LB = '[';
constexpr char RB = ']';
constexpr char DB = '%';   // "]["
constexpr char FR = '.';   // free position of psi_k
constexpr char UN = '?';   // still free at k_max
inline bool is_token(char c) { return c == B1 || c == B2 || c == LB || c == RB || c == DB || c == FR || c == UN; }
inline bool is_bracket(char c) { return c == B2 || c == LB || c == RB || c == DB; }
}  // namespace sym

constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min();
constexpr int64_t kPosInf = std::numeric_limits<int64_t>::max();

enum class Role : char { Marker = 'M', Filling = 'F', Free = 'R' };

struct LayoutCell {
  Role role = Role::Free;
  int scale = 1;      // scale at which the role was assigned
  char symbol = sym::FR;
  bool freeable = false;  // interior of a singular 1-block, outside the protected ends
};

struct BlockInfo {
  int scale = 1;
  int64_t b = kNegInf, e = kPosInf;  // [b, e)
  int64_t mu = kNegInf;              // marker (scale 1: b) or bracket position
  int64_t r_left = kNegInf, r_right = kPosInf;  // returns the block was cut at
  bool singular = false, special = false;
  std::string orbit;  // singular: canonical orbit word
  int m = 0;          // its least period
  int64_t c = 0;      // x[c .. c+m) == orbit
  bool open_left() const { return b == kNegInf; }
  bool open_right() const { return e == kPosInf; }
  int64_t length() const { return (open_left() || open_right()) ? -1 : e - b; }
};

// Budget arithmetic of one regular block, independent of any point.
struct BlockBudget {
  int64_t marker = 1, filling = 0, free = 0;
};
// scale 1, length L: one marker, floor((1 - alpha/2) L) filling, the rest free
BlockBudget scale1_budget(const Rational& alpha, int64_t L);
// scale k >= 2, length L with `available` (k-1)-free positions; throws
// CapacityError when 1 + floor(alpha L / 2^k) do not fit
BlockBudget scale_k_budget(const Rational& alpha, int k, int64_t L, int64_t available);

struct CodeSet {
  CodeSet(const System& s, const Schedule& sch);
  FirstCodebook first;
  std::vector<ConditionalCodebook> cond;  // index k-2
  PeriodicCode periodic;
};

// Empty-block grammar of one point: roles and symbols per position and scale.
class Layout {
 public:
  Layout(MarkerOracle& oracle, const CodeSet& codes);

  const BlockInfo& block(int k, int64_t t);
  LayoutCell cell(int k, int64_t t);
  // positions in [a, b] that would carry a scale k+1 marker
  std::vector<int64_t> next_scale_markers(int k, int64_t a, int64_t b);
  // "index scale role" lines for [a, b]
  std::string dump(int k, int64_t a, int64_t b);

  MarkerOracle& oracle() { return *o_; }

 private:
  std::pair<int64_t, int64_t> adjust(int k, int64_t r);
  const BlockInfo& make_block1(int64_t t);
  const BlockInfo& make_block(int k, int64_t t);
  void fill_singular(BlockInfo& B, int k, std::optional<int64_t> rl, std::optional<int64_t> rr);
  const std::unordered_map<int64_t, LayoutCell>& regular_plan(const BlockInfo& B);
  const std::unordered_map<int64_t, LayoutCell>* segment_plan(const BlockInfo& B, int64_t t);
  char bracket(const BlockInfo& B);
  std::string xw(int64_t a, int64_t b) const;

  MarkerOracle* o_;
  const CodeSet* codes_;
  const Schedule* sch_;
  std::vector<std::map<int64_t, BlockInfo>> blocks_;
  std::map<std::pair<int, int64_t>, std::unordered_map<int64_t, LayoutCell>> plans_, seg_plans_;
  std::map<std::pair<int, int64_t>, std::string> first_codes_;
  std::map<std::pair<int, int64_t>, std::pair<int64_t, int64_t>> adj_;
};

}  // namespace mc
