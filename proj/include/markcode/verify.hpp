#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "markcode/pipeline.hpp"

namespace mc {

struct SuiteResult {
  explicit SuiteResult(std::string name = {}) : invariant(std::move(name)) {}
  std::string invariant;
  bool ok = true;
  int64_t count = 0;   // cases examined
  int64_t failed = 0;
  std::string detail;  // first failure, or "vacuous" when count == 0
};

struct VerifyOptions {
  int samples = 20;
  uint64_t seed = 1;
  int64_t radius = 200;  // itineraries are compared on [-radius, radius]
};

// Invariant suites of a built pipeline: schedule, periodic code, codebook
// capacity, towers, round trip, equivariance, stream extension, change
// density between scales, metric laws.
std::vector<SuiteResult> run_verify(const Pipeline& p, const VerifyOptions& opt = {});
std::string format_suites(const std::vector<SuiteResult>& r);

}  // namespace mc
