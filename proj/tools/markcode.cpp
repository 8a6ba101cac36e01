#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "markcode/codec.hpp"
#include "markcode/metrics.hpp"
#include "markcode/sampling.hpp"
#include "markcode/verify.hpp"

using namespace mc;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

std::pair<int64_t, int64_t> parse_window(const std::string& w) {
  auto colon = w.find(':', 1);
  if (colon == std::string::npos) throw UsageError("--window expects a:b");
  try {
    int64_t a = std::stoll(w.substr(0, colon)), b = std::stoll(w.substr(colon + 1));
    if (a > b) throw UsageError("--window needs a <= b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--window expects integers a:b");
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::string itinerary_text(int64_t a, int64_t b, const std::vector<std::vector<std::string>>& it) {
  std::ostringstream out;
  out << "[" << a << "," << b << "] scales=" << it.size() << "\n";
  for (int64_t t = a; t <= b; ++t) {
    out << t;
    for (auto& row : it) out << '\t' << row[(size_t)(t - a)];
    out << '\n';
  }
  return out.str();
}

std::unique_ptr<Pipeline> need_pipeline(const std::string& dir) {
  if (dir.empty()) throw UsageError("--pipeline is required");
  return load_pipeline(dir);
}

// module tag for error provenance
std::string module_of(const std::exception& e) {
  if (dynamic_cast<const MalformedStream*>(&e)) return "codec";
  if (dynamic_cast<const CapacityError*>(&e)) return "blocks";
  if (dynamic_cast<const ScheduleError*>(&e)) return "entropy-lab";
  if (dynamic_cast<const SeparationError*>(&e)) return "markers";
  if (dynamic_cast<const SpecError*>(&e)) return "input";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"markcode: marker-based symbolic codes for zero-dimensional systems"};
  app.require_subcommand(1);

  std::string system_file, pipeline_dir, point_file, stream_file, window, out;
  std::string tower_n, tower_r, itinerary_out;
  uint64_t seed = 1;
  int K = 2, kmax = 2, headroom = 8, ncert = 64, scale = 0, samples = 20;

  auto* build = app.add_subcommand("build", "build and verify a pipeline");
  build->add_option("--system", system_file, "system file")->required();
  build->add_option("--K", K, "output alphabet size");
  build->add_option("--kmax", kmax, "number of scales");
  build->add_option("--headroom", headroom, "C in alpha n_k >= C 2^k");
  build->add_option("--ncert", ncert, "explicit certification range");
  build->add_option("--tower-n", tower_n, "comma list of tower n_k (clopen towers)");
  build->add_option("--tower-r", tower_r, "comma list of tower radii r_k");
  build->add_option("--out", out, "pipeline directory")->required();

  auto* encode = app.add_subcommand("encode", "encode a point on a window");
  encode->add_option("--pipeline", pipeline_dir)->required();
  encode->add_option("--point", point_file)->required();
  encode->add_option("--window", window)->required();
  encode->add_option("--scale", scale, "scale k (default: the limit stream)");
  encode->add_option("--itinerary", itinerary_out, "also write the point's itineraries on the certified subwindow");
  encode->add_option("--out", out, "stream file (default stdout)");

  auto* decode = app.add_subcommand("decode", "decode a stream into itineraries");
  decode->add_option("--pipeline", pipeline_dir)->required();
  decode->add_option("--stream", stream_file)->required();
  decode->add_option("--scale", scale, "scale k (default k_max)");
  decode->add_option("--out", out, "itinerary file (default stdout)");

  auto* inv = app.add_subcommand("invert", "V_k cell at time 0 of a stream");
  inv->add_option("--pipeline", pipeline_dir)->required();
  inv->add_option("--stream", stream_file)->required();
  inv->add_option("--scale", scale, "scale k (default k_max)");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--pipeline", pipeline_dir)->required();
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out);

  auto* report = app.add_subcommand("report", "convergence diagnostics on sampled points");
  report->add_option("--pipeline", pipeline_dir)->required();
  report->add_option("--samples", samples);
  report->add_option("--seed", seed);
  report->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "build") {
      PipelineConfig cfg;
      cfg.K = K;
      cfg.kmax = kmax;
      cfg.schedule.headroom = headroom;
      cfg.schedule.ncert = ncert;
      if (!tower_n.empty()) cfg.tower_n = parse_list(tower_n);
      if (!tower_r.empty()) cfg.tower_r = parse_list(tower_r);
      if (cfg.tower_n.size() != cfg.tower_r.size()) throw UsageError("--tower-n and --tower-r need the same length");
      System s = parse_system(slurp(system_file));
      if (!s.symbolic() && cfg.tower_n.empty()) cfg.tower_n = {2, 4, 8}, cfg.tower_r = {0, 0, 0};
      auto p = build_pipeline(s, cfg);
      save_pipeline(*p, out);
      std::cerr << "pipeline written to " << out << "\n";
      return 0;
    }
    auto p = need_pipeline(pipeline_dir);
    if (cmd == "encode") {
      auto [a, b] = parse_window(window);
      PointRep x = parse_point(slurp(point_file));
      if (!valid_point(p->system, x)) throw SpecError("point is not admissible in the system");
      if (scale < 0 || scale > p->kmax()) throw UsageError("--scale out of range");
      SymbolStream s = scale ? encode_k(*p, x, scale, a, b) : encode_limit(*p, x, a, b);
      std::cerr << "window [" << a << "," << b << "], inflation 0 (blocks are resolved pointwise)\n";
      emit(out, serialize_stream(s));
      if (!itinerary_out.empty()) {
        int k = scale ? scale : p->kmax();
        int64_t M = p->modulus(k);
        if (a + M > b - M) throw UsageError("window shorter than twice the decode modulus " + std::to_string(M));
        std::vector<std::vector<std::string>> it;
        for (int l = 1; l <= k; ++l) it.push_back(itinerary(x, p->schedule.m[(size_t)l - 1], a + M, b - M));
        emit(itinerary_out, itinerary_text(a + M, b - M, it));
      }
      return 0;
    }
    if (cmd == "decode" || cmd == "invert") {
      SymbolStream s = parse_stream(slurp(stream_file), p->schedule.K);
      int k = scale ? scale : p->kmax();
      if (cmd == "invert") {
        std::cout << invert(s, *p, k) << "\n";
        return 0;
      }
      DecodeResult d = decode_k(s, *p, k);
      emit(out, itinerary_text(d.a, d.b, d.itineraries));
      return 0;
    }
    if (cmd == "verify") {
      VerifyOptions vo;
      vo.samples = samples;
      vo.seed = seed;
      auto res = run_verify(*p, vo);
      emit(out, format_suites(res));
      for (auto& r : res)
        if (!r.ok) return 1;
      return 0;
    }
    if (cmd == "report") {
      std::mt19937_64 rng(seed);
      std::vector<std::pair<std::string, PointRep>> pts;
      for (int i = 0; i < samples; ++i) pts.emplace_back("sample" + std::to_string(i), random_point(p->system, rng));
      emit(out, format_report(convergence_report(*p, pts)));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "markcode " << cmd << ": usage: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "markcode " << cmd << ": " << module_of(e) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "markcode " << cmd << ": " << module_of(e) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
