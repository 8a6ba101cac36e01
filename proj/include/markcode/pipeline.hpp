#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "markcode/entropy.hpp"
#include "markcode/layout.hpp"
#include "markcode/towers.hpp"

namespace mc {

struct PipelineConfig {
  int K = 2;
  int kmax = 2;
  ScheduleOptions schedule;
  std::optional<Schedule> schedule_override;
  // clopen towers are only built for an explicit (small) tower schedule
  std::vector<int> tower_n, tower_r;
  int modulus_aperiodic = 4;  // decode window factor times n_k
  int modulus_periodic = 10;
};

// Everything the codec needs. Codebooks keep pointers into `system` and
// `schedule`, so a Pipeline never moves; build_pipeline hands out a
// unique_ptr.
struct Pipeline {
  Pipeline(System s, Schedule sch, PipelineConfig cfg);
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  System system;
  Schedule schedule;
  PipelineConfig config;
  std::unique_ptr<CodeSet> codes;
  std::vector<MarkerTower> towers;
  std::vector<OdoTower> odo_towers;

  int kmax() const { return schedule.kmax(); }
  // decode modulus M_k: streams must cover [t - M_k, t + M_k]
  int64_t modulus(int k) const;
};

std::unique_ptr<Pipeline> build_pipeline(const System& s, const PipelineConfig& cfg);

// Directory layout: system.txt, schedule.txt, params.txt, periodic_code.txt
// and towers.txt (when towers were built).
void save_pipeline(const Pipeline& p, const std::string& dir);
std::unique_ptr<Pipeline> load_pipeline(const std::string& dir);

}  // namespace mc
