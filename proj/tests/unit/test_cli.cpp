#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hail/runner.hpp"
#include "hail/verify.hpp"

using namespace hail;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_rate_config() {
  nlohmann::json j;
  j["kind"] = "rate";
  j["seed"] = 7;
  j["dimension"] = 1;
  j["intensity"] = 1.0;
  j["marks"] = {{"shape", {{"family", "ball"}, {"radius", 0.5}}},
                {"height", {{"kind", "fixed"}, {"value", 1.0}}}};
  j["ground"] = {{"kind", "origin"}};
  j["functionals"] = {"north_pole", "gauge:point:v=1"};
  j["checkpoints"] = {2.0, 4.0, 6.0, 8.0};
  j["replicates"] = 12;
  j["window"] = {{"half_width", 12.0}};
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hailtest" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config: strict schema") {
  CHECK_NOTHROW(parse_config(base_rate_config()));

  auto unknown = base_rate_config();
  unknown["surprise"] = 1;
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);

  auto nested_unknown = base_rate_config();
  nested_unknown["marks"]["shape"]["color"] = "blue";
  CHECK_THROWS_AS(parse_config(nested_unknown), ConfigError);

  auto missing = base_rate_config();
  missing.erase("marks");
  CHECK_THROWS_AS(parse_config(missing), ConfigError);

  auto bad_kind = base_rate_config();
  bad_kind["kind"] = "meditate";
  CHECK_THROWS_AS(parse_config(bad_kind), ConfigError);

  auto heavy_tail = base_rate_config();
  heavy_tail["dimension"] = 2;
  heavy_tail["marks"]["shape"] = {{"family", "ball"},
                                  {"radius_dist", {{"family", "exponential"}, {"rate", 1.0}}}};
  heavy_tail["window"]["half_width"] = 12.0;
  CHECK_THROWS_AS(parse_config(heavy_tail), ConfigError);

  auto bad_gauge = base_rate_config();
  bad_gauge["kind"] = "gauge";
  bad_gauge["functionals"] = {"north_pole"};
  CHECK_THROWS_AS(parse_config(bad_gauge), ConfigError);
}

TEST_CASE("ground string grammar") {
  CHECK(parse_ground_string("origin", 2).kind == GroundKind::PointSet);
  Ground pts = parse_ground_string("points:0 0|1.5 0", 2);
  CHECK(pts.points.size() == 2);
  CHECK(parse_ground_string("ball:0 0;0.5", 2).kind == GroundKind::Ball);
  CHECK(parse_ground_string("cone:0;1;0.785", 1).kind == GroundKind::Cone);
  CHECK(parse_ground_string("halfspace:1 0;0", 2).kind == GroundKind::HalfSpace);
  CHECK(parse_ground_string("full", 3).kind == GroundKind::FullSpace);
  CHECK_THROWS_AS(parse_ground_string("wedge:1", 2), ConfigError);
}

TEST_CASE("run_config: identical bytes for repeated runs and any parallelism") {
  Config cfg = parse_config(base_rate_config());

  auto run_to = [&](const std::string& name, int jobs) {
    fs::path dir = fresh_dir(name);
    RunOptions opt;
    opt.out_dir = dir.string();
    opt.jobs = jobs;
    REQUIRE(run_config(cfg, opt) == 0);
    return dir;
  };
  fs::path a = run_to("det_a", 1);
  fs::path b = run_to("det_b", 1);
  fs::path c = run_to("det_c", 4);

  for (const char* f : {"results.csv", "summary.json", "manifest.json"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / f) == slurp(c / f));
  }
  for (const auto& entry : fs::directory_iterator(a / "plotdata"))
    CHECK(slurp(entry.path()) == slurp(c / "plotdata" / entry.path().filename()));

  std::string csv = slurp(a / "results.csv");
  CHECK(csv.find("north_pole") != std::string::npos);
  CHECK(csv.find("gauge:point:v=1") != std::string::npos);
}

TEST_CASE("run_config: every kind emits its artifacts") {
  {  // simulate
    nlohmann::json j;
    j["kind"] = "simulate";
    j["seed"] = 3;
    j["dimension"] = 1;
    j["intensity"] = 1.0;
    j["marks"] = base_rate_config()["marks"];
    j["ground"] = {{"kind", "origin"}};
    j["horizon"] = 4.0;
    j["replicates"] = 2;
    j["window"] = {{"half_width", 8.0}};
    fs::path dir = fresh_dir("simulate");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_config(parse_config(j), opt) == 0);
    CHECK(fs::exists(dir / "realization_0.txt"));
    CHECK(fs::exists(dir / "heap_1.txt"));
    CHECK(fs::exists(dir / "results.csv"));
  }
  {  // cover
    nlohmann::json j;
    j["kind"] = "cover";
    j["seed"] = 4;
    j["dimension"] = 1;
    j["intensity"] = 1.5;
    j["marks"] = base_rate_config()["marks"];
    j["ground"] = {{"kind", "origin"}};
    j["checkpoints"] = {6.0};
    j["replicates"] = 8;
    j["window"] = {{"half_width", 10.0}};
    j["target"] = {{"points", {{-0.5}, {0.5}}}};
    fs::path dir = fresh_dir("cover");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_config(parse_config(j), opt) == 0);
    std::string csv = slurp(dir / "results.csv");
    CHECK(csv.find("censored_fraction") != std::string::npos);
  }
  {  // branching
    nlohmann::json j;
    j["kind"] = "branching";
    j["seed"] = 5;
    j["offspring"] = {{"family", "constant"}, {"count", 2}};
    j["height"] = {{"family", "constant"}, {"value", 1.0}};
    j["n_max"] = 10;
    j["replicates"] = 5;
    fs::path dir = fresh_dir("branching");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_config(parse_config(j), opt) == 0);
    std::string csv = slurp(dir / "results.csv");
    CHECK(csv.find("n,mean_d_n,mean_h_n,stderr") != std::string::npos);
    CHECK(csv.find("\n10,1024,10,0\n") != std::string::npos);
  }
  {  // phase (tiny grid, tiny replicates: artifact shape only)
    nlohmann::json j = base_rate_config();
    j["kind"] = "phase";
    j.erase("functionals");
    j["direction"] = {1.0};
    j["phi_grid"] = {0.3, 1.0, 1.5707963267948966};
    j["replicates"] = 6;
    fs::path dir = fresh_dir("phase");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_config(parse_config(j), opt) == 0);
    auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.contains("phi_lo"));
    CHECK(summary.contains("cells"));
  }
}

TEST_CASE("replay: fixture file produces the hand-traced dump") {
  fs::path dir = fresh_dir("replay");
  fs::path rfile = dir / "fixture.txt";
  {
    std::ofstream os(rfile);
    save_realization(os, fixture_a());
  }
  std::ostringstream out;
  replay_file(rfile.string(), "origin", out);
  std::string dump = out.str();
  CHECK(dump.find("placed 2") != std::string::npos);
  CHECK(dump.find("0 1 2 ball 0.3 0.5") != std::string::npos);
  CHECK(dump.find("1 2 3 ball 1 0.3 0") != std::string::npos);  // id t top shape x r parent
  CHECK(dump.find("discarded 1") != std::string::npos);
}

#ifdef HAILSTORM_BIN
TEST_CASE("binary: exit codes and verify subcommand") {
  fs::path dir = fresh_dir("bin");

  {  // schema violation -> exit 2
    fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{\"kind\": \"rate\", \"unexpected\": 1}";
    std::string cmd = std::string(HAILSTORM_BIN) + " rate --config " + bad.string() + " --out " +
                      (dir / "o1").string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
  }
  {  // happy path rate run -> exit 0, artifacts on disk
    fs::path good = dir / "good.json";
    std::ofstream(good) << base_rate_config().dump();
    std::string cmd = std::string(HAILSTORM_BIN) + " rate --config " + good.string() + " --out " +
                      (dir / "o2").string() + " --jobs 2 >/dev/null";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(dir / "o2" / "results.csv"));
    CHECK(fs::exists(dir / "o2" / "manifest.json"));
  }
  {  // verify subcommand, fixtures suite
    std::string cmd = std::string(HAILSTORM_BIN) + " verify --suite fixtures --out " +
                      (dir / "o3").string() + " >/dev/null";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
  }
  {  // malformed realization file -> exit 2 (parse error with line number)
    fs::path broken = dir / "broken.txt";
    std::ofstream(broken) << "dim 1\nlambda 1\nseed 0\nwindow 0 6 3\narrivals 1\nnonsense\n";
    std::string cmd = std::string(HAILSTORM_BIN) + " replay " + broken.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
  }
}
#endif
