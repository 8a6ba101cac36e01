#include "markcode/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace mc {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw SpecError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// write to a temporary name first so a crash never leaves half a file
void write_atomic(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw SpecError("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, p);
}

std::string ints(const std::vector<int>& v) {
  std::string o = "[";
  for (size_t i = 0; i < v.size(); ++i) o += (i ? ", " : "") + std::to_string(v[i]);
  return o + "]";
}

std::vector<int> parse_ints(std::string s) {
  std::vector<int> out;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  int v;
  while (in >> v) out.push_back(v);
  return out;
}

}  // namespace

Pipeline::Pipeline(System s, Schedule sch, PipelineConfig cfg)
    : system(std::move(s)), schedule(std::move(sch)), config(std::move(cfg)) {
  if (system.symbolic()) codes = std::make_unique<CodeSet>(system, schedule);
  if (!config.tower_n.empty()) {
    auto tp = TowerParams::from(config.tower_n, config.tower_r);
    if (system.symbolic())
      towers = build_towers(system, tp);
    else
      odo_towers = build_odometer_towers(system, tp);
  }
}

int64_t Pipeline::modulus(int k) const {
  int f = system.has_periodic_points() ? config.modulus_periodic : config.modulus_aperiodic;
  return (int64_t)f * schedule.n.at(k - 1);
}

std::unique_ptr<Pipeline> build_pipeline(const System& s, const PipelineConfig& cfg) {
  Schedule sch;
  if (s.symbolic()) {
    if (cfg.schedule_override) {
      sch = *cfg.schedule_override;
      for (auto& c : verify_schedule(s, sch, cfg.schedule))
        if (!c.ok) throw ScheduleError("schedule override fails " + c.family + " at scale " + std::to_string(c.scale) + ": " + c.detail);
    } else {
      sch = build_schedule(s, cfg.K, cfg.kmax, cfg.schedule);
    }
  } else {
    // the odometer path carries towers only; its "schedule" is the tower one
    sch.K = cfg.K;
    sch.n = cfg.tower_n;
    sch.r = cfg.tower_r;
    sch.m.assign(sch.n.size(), 0);
    sch.nprime = sch.n;
  }
  auto p = std::make_unique<Pipeline>(s, sch, cfg);
  for (size_t k = 0; k < p->towers.size(); ++k)
    for (auto& c : verify_tower(p->towers[k], k ? &p->towers[k - 1] : nullptr, !s.has_periodic_points()))
      if (!c.ok) throw SeparationError("tower scale " + std::to_string(k + 1) + " fails " + c.invariant + ": " + c.detail);
  for (size_t k = 0; k < p->odo_towers.size(); ++k)
    for (auto& c : verify_tower(p->odo_towers[k], k ? &p->odo_towers[k - 1] : nullptr, true))
      if (!c.ok) throw SeparationError("tower scale " + std::to_string(k + 1) + " fails " + c.invariant + ": " + c.detail);
  return p;
}

void save_pipeline(const Pipeline& p, const std::string& dir) {
  fs::create_directories(dir);
  fs::path d(dir);
  write_atomic(d / "system.txt", serialize_system(p.system));
  if (p.system.symbolic()) write_atomic(d / "schedule.txt", serialize_schedule(p.schedule));
  std::ostringstream params;
  params << "kmax: " << p.config.kmax << "\n"
         << "K: " << p.config.K << "\n"
         << "headroom: " << p.config.schedule.headroom << "\n"
         << "ncert: " << p.config.schedule.ncert << "\n"
         << "modulus_aperiodic: " << p.config.modulus_aperiodic << "\n"
         << "modulus_periodic: " << p.config.modulus_periodic << "\n"
         << "tower_n: " << ints(p.config.tower_n) << "\n"
         << "tower_r: " << ints(p.config.tower_r) << "\n"
         << "cylinders: length-then-lex\n";
  write_atomic(d / "params.txt", params.str());
  if (p.codes) write_atomic(d / "periodic_code.txt", p.codes->periodic.str());
  if (!p.towers.empty()) write_atomic(d / "towers.txt", serialize_towers(p.towers));
  if (!p.odo_towers.empty()) {
    // informational: load rebuilds odometer towers from tower_n / tower_r
    std::ostringstream t;
    for (auto& tw : p.odo_towers) t << tw.k << ": " << tw.U.str() << "\n";
    write_atomic(d / "towers.txt", t.str());
  }
}

std::unique_ptr<Pipeline> load_pipeline(const std::string& dir) {
  fs::path d(dir);
  System s = parse_system(slurp(d / "system.txt"));
  PipelineConfig cfg;
  std::istringstream in(slurp(d / "params.txt"));
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon), val = line.substr(colon + 1);
    if (key == "kmax") cfg.kmax = std::stoi(val);
    else if (key == "K") cfg.K = std::stoi(val);
    else if (key == "headroom") cfg.schedule.headroom = std::stoi(val);
    else if (key == "ncert") cfg.schedule.ncert = std::stoi(val);
    else if (key == "modulus_aperiodic") cfg.modulus_aperiodic = std::stoi(val);
    else if (key == "modulus_periodic") cfg.modulus_periodic = std::stoi(val);
    else if (key == "tower_n") cfg.tower_n = parse_ints(val);
    else if (key == "tower_r") cfg.tower_r = parse_ints(val);
  }
  if (s.symbolic()) cfg.schedule_override = parse_schedule(slurp(d / "schedule.txt"));
  auto p = build_pipeline(s, cfg);
  if (p->codes && fs::exists(d / "periodic_code.txt") && slurp(d / "periodic_code.txt") != p->codes->periodic.str())
    throw SpecError("periodic_code.txt does not match the code rebuilt from the schedule");
  if (!p->towers.empty() && fs::exists(d / "towers.txt")) {
    auto sets = parse_tower_sets(p->system, slurp(d / "towers.txt"));
    if (sets.size() != p->towers.size()) throw SpecError("towers.txt: scale count mismatch");
    for (size_t k = 0; k < sets.size(); ++k) {
      MarkerTower t = p->towers[k];
      t.U = sets[k];
      for (auto& c : verify_tower(t, k ? &p->towers[k - 1] : nullptr, !s.has_periodic_points()))
        if (!c.ok) throw SeparationError("towers.txt scale " + std::to_string(k + 1) + " fails " + c.invariant + ": " + c.detail);
    }
  }
  return p;
}

}  // namespace mc
