#pragma once

#include <cstdint>
#include <random>

#include "markcode/point.hpp"

namespace mc {

struct SampleSpec {
  int core_max = 400;     // core length uniform in [0, core_max]
  int period_max = 40;    // tail periods uniform in [1, period_max] (when realizable)
  int64_t anchor_min = -300, anchor_max = 0;
};

// Eventually periodic admissible point of an SFT: a random core walk closed
// off by a random closed walk on each side. Deterministic given the engine.
PointRep random_point(const System& s, std::mt19937_64& rng, const SampleSpec& spec = {});

}  // namespace mc
