#include "hail/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>
#include <thread>

#include "hail/text.hpp"
#include "hail/version.hpp"

namespace hail {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << content;
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

std::string sanitize(const std::string& key) {
  std::string out;
  for (char c : key) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

json estimate_json(const RateEstimate& e) {
  json j;
  j["functional"] = e.functional;
  j["slope"] = e.slope;
  j["stderr"] = e.std_error;
  j["sup_mean_rate"] = e.sup_mean_rate;
  j["sup_mean_stderr"] = e.sup_mean_std_error;
  j["checkpoint_means"] = e.checkpoint_means;
  j["n_replicates"] = e.n_replicates;
  j["n_excluded"] = e.n_excluded;
  j["contamination_rate"] = e.contamination_rate;
  j["method"] = e.method == RateMethod::IncrementMean ? "increment-mean" : "ls";
  return j;
}

std::string estimates_csv(const std::vector<RateEstimate>& ests,
                          const std::vector<double>& checkpoints, const std::string& prefix_header,
                          const std::vector<std::string>& prefix_cells) {
  std::string csv = prefix_header;
  csv += "functional,slope,stderr,n_replicates,contamination_rate,sup_mean_rate,sup_mean_stderr,"
         "n_excluded,method";
  for (double t : checkpoints) csv += ",mean@" + format_double(t);
  csv += '\n';
  for (std::size_t i = 0; i < ests.size(); ++i) {
    const RateEstimate& e = ests[i];
    if (!prefix_cells.empty()) csv += prefix_cells[i] + ",";
    csv += e.functional + ',' + format_double(e.slope) + ',' + format_double(e.std_error) + ',' +
           std::to_string(e.n_replicates) + ',' + format_double(e.contamination_rate) + ',' +
           format_double(e.sup_mean_rate) + ',' + format_double(e.sup_mean_std_error) + ',' +
           std::to_string(e.n_excluded) + ',' +
           (e.method == RateMethod::IncrementMean ? "increment-mean" : "ls");
    for (double m : e.checkpoint_means) csv += ',' + format_double(m);
    csv += '\n';
  }
  return csv;
}

void write_plotdata(const fs::path& dir, const ExperimentPlan& plan, const RateRun& rr) {
  fs::create_directories(dir / "plotdata");
  for (std::size_t f = 0; f < plan.functionals.size(); ++f) {
    std::string csv = "t,mean";
    for (int i = 0; i < plan.replicates; ++i) csv += ",rep" + std::to_string(i);
    csv += '\n';
    for (std::size_t k = 0; k < plan.checkpoints.size(); ++k) {
      csv += format_double(plan.checkpoints[k]) + ',' +
             format_double(rr.estimates[f].checkpoint_means[k]);
      for (int i = 0; i < plan.replicates; ++i)
        csv += ',' + format_double(rr.values[f][static_cast<std::size_t>(i)][k]);
      csv += '\n';
    }
    write_file(dir / "plotdata" / ("f" + std::to_string(f) + "_" + sanitize(plan.functionals[f]) + ".csv"),
               csv);
  }
}

void write_manifest(const fs::path& dir, const Config& cfg, std::uint64_t seed) {
  // No execution parameters here: results are parallelism-invariant, so the
  // config echo plus the effective seed reproduce the run exactly.
  json m;
  m["version"] = kVersion;
  m["config"] = cfg.raw;
  m["effective_seed"] = seed;
  m["seed_derivation"] = kSeedDerivation;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

template <typename Fn>
void parallel_replicates(int n, int jobs, Fn&& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

int run_rate_like(const Config& cfg, const fs::path& dir) {
  RateRun rr = rate_run(cfg.plan);
  write_file(dir / "results.csv", estimates_csv(rr.estimates, cfg.plan.checkpoints, "", {}));
  write_plotdata(dir, cfg.plan, rr);

  json summary;
  summary["kind"] = cfg.kind;
  summary["estimates"] = json::array();
  for (const RateEstimate& e : rr.estimates) summary["estimates"].push_back(estimate_json(e));
  if (cfg.hit_check) {
    HitProbabilityReport hp = hit_probability_check(
        cfg.plan.d, cfg.plan.lambda, cfg.hit_check->radius, cfg.hit_check->direction,
        cfg.hit_check->replicates, derive_seed(cfg.plan.base_seed, 0x48495450), cfg.plan.jobs);
    json h;
    h["estimate"] = hp.estimate;
    h["stderr"] = hp.std_error;
    h["bound"] = hp.bound;
    h["replicates"] = hp.replicates;
    h["pass"] = hp.pass;
    summary["hit_probability_check"] = h;
  }
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_phase(const Config& cfg, const fs::path& dir) {
  ExperimentPlan p = phase_plan(cfg.plan, cfg.phase_direction, cfg.phi_grid);
  RateRun rr = rate_run(p);
  PhaseResult res = phase_bracket(rr.estimates, cfg.phi_grid, cfg.significance);

  std::vector<std::string> phis;
  for (double phi : cfg.phi_grid) phis.push_back(format_double(phi));
  write_file(dir / "results.csv", estimates_csv(rr.estimates, p.checkpoints, "phi,", phis));
  write_plotdata(dir, p, rr);

  json summary;
  summary["kind"] = "phase";
  summary["phi_lo"] = res.phi_lo;
  summary["phi_hi"] = res.phi_hi;
  summary["transition_found"] = res.transition_found;
  summary["monotone"] = res.monotone;
  if (!res.diagnostic.empty()) summary["diagnostic"] = res.diagnostic;
  summary["cells"] = json::array();
  for (const PhaseCell& c : res.cells) {
    json cell = estimate_json(c.estimate);
    cell["phi"] = c.phi;
    cell["positive"] = c.positive;
    summary["cells"].push_back(cell);
  }
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_cover(const Config& cfg, const fs::path& dir, int jobs) {
  const ExperimentPlan& plan = cfg.plan;
  ResolvedWindow rw = resolve_window(plan);
  std::vector<double> times(plan.replicates, kInf);
  parallel_replicates(plan.replicates, jobs, [&](int i) {
    Realization r = generate(derive_seed(plan.base_seed, static_cast<std::uint64_t>(i)),
                             plan.lambda, rw.window, plan.marks);
    HeapState state = run(r, plan.ground);
    times[i] = cover_time(state, cfg.cover.points);
  });

  std::vector<double> covered;
  for (double t : times)
    if (t < kInf) covered.push_back(t);
  std::sort(covered.begin(), covered.end());
  double mean = 0;
  for (double t : covered) mean += t;
  if (!covered.empty()) mean /= static_cast<double>(covered.size());
  double median = covered.empty() ? kInf : covered[covered.size() / 2];
  double censored_fraction =
      static_cast<double>(plan.replicates - static_cast<int>(covered.size())) / plan.replicates;

  std::string csv =
      "target_points,replicates,censored_fraction,mean_cover_time,median_cover_time\n";
  csv += std::to_string(cfg.cover.points.size()) + ',' + std::to_string(plan.replicates) + ',' +
         format_double(censored_fraction) + ',' + format_double(mean) + ',' +
         format_double(median) + '\n';
  write_file(dir / "results.csv", csv);

  fs::create_directories(dir / "plotdata");
  std::string per = "replicate,cover_time\n";
  for (int i = 0; i < plan.replicates; ++i)
    per += std::to_string(i) + ',' + format_double(times[i]) + '\n';
  write_file(dir / "plotdata" / "cover_times.csv", per);

  json summary;
  summary["kind"] = "cover";
  summary["target_points"] = cfg.cover.points.size();
  summary["replicates"] = plan.replicates;
  summary["censored_fraction"] = censored_fraction;
  summary["mean_cover_time"] = mean;
  summary["median_cover_time"] = median;
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_simulate(const Config& cfg, const fs::path& dir, int jobs) {
  const ExperimentPlan& plan = cfg.plan;
  ExperimentPlan wp = plan;
  wp.checkpoints = {cfg.sim_horizon};
  ResolvedWindow rw = resolve_window(wp);

  struct Row {
    std::uint64_t seed;
    std::size_t arrivals, placed, discarded;
    double sup_h, diam, margin;
    bool contaminated;
  };
  std::vector<Row> rows(cfg.sim_replicates);
  std::vector<std::string> realization_texts(cfg.sim_replicates), heap_texts(cfg.sim_replicates);

  parallel_replicates(cfg.sim_replicates, jobs, [&](int i) {
    const std::uint64_t seed = derive_seed(plan.base_seed, static_cast<std::uint64_t>(i));
    Realization r = generate(seed, plan.lambda, rw.window, plan.marks);
    HeapState state = run(r, plan.ground);
    MarginReport margin = containment_margin(state.placed_footprints(), rw.window, rw.r_cut);
    std::ostringstream rs, hs;
    save_realization(rs, r);
    write_heap_dump(hs, state);
    realization_texts[i] = rs.str();
    heap_texts[i] = hs.str();
    rows[i] = Row{seed,
                  r.arrivals.size(),
                  state.placed().size(),
                  r.arrivals.size() - state.placed().size(),
                  state.sup_height(),
                  footprint_diameter(state),
                  margin.margin,
                  margin.contaminated};
  });

  std::string csv =
      "replicate,seed,arrivals,placed,discarded,sup_height,footprint_diameter,margin,"
      "contaminated\n";
  for (int i = 0; i < cfg.sim_replicates; ++i) {
    const Row& r = rows[i];
    csv += std::to_string(i) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.arrivals) +
           ',' + std::to_string(r.placed) + ',' + std::to_string(r.discarded) + ',' +
           format_double(r.sup_h) + ',' + format_double(r.diam) + ',' + format_double(r.margin) +
           ',' + (r.contaminated ? "1" : "0") + '\n';
    write_file(dir / ("realization_" + std::to_string(i) + ".txt"), realization_texts[i]);
    write_file(dir / ("heap_" + std::to_string(i) + ".txt"), heap_texts[i]);
  }
  write_file(dir / "results.csv", csv);

  json summary;
  summary["kind"] = "simulate";
  summary["replicates"] = cfg.sim_replicates;
  summary["horizon"] = cfg.sim_horizon;
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_branching(const Config& cfg, const fs::path& dir, int jobs) {
  BranchingRate br = max_height_rate(cfg.branching, cfg.branching_n_max, cfg.branching_replicates,
                                     cfg.seed, jobs);
  std::string csv = "n,mean_d_n,mean_h_n,stderr\n";
  for (std::size_t n = 0; n < br.mean_d_n.size(); ++n)
    csv += std::to_string(n) + ',' + format_double(br.mean_d_n[n]) + ',' +
           format_double(br.mean_h_n[n]) + ',' + format_double(br.se_h_n[n]) + '\n';
  write_file(dir / "results.csv", csv);

  json summary;
  summary["kind"] = "branching";
  summary["rate"] = br.rate;
  summary["stderr"] = br.std_error;
  summary["n_max"] = br.n_max;
  summary["replicates"] = br.replicates;
  summary["censored_runs"] = br.censored_runs;
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_verify(const Config& cfg, const fs::path& dir, std::uint64_t seed, std::ostream* log) {
  bool all = std::find(cfg.suites.begin(), cfg.suites.end(), "all") != cfg.suites.end();
  std::vector<PropertyReport> reports;
  for (const SuiteEntry& entry : verification_suites()) {
    if (!all && std::find(cfg.suites.begin(), cfg.suites.end(), entry.name) == cfg.suites.end())
      continue;
    PropertyReport rep = entry.run(seed);
    if (log) {
      *log << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.name << " (checked " << rep.checked
           << ", violations " << rep.violations << ")";
      if (!rep.pass) *log << "  " << rep.detail;
      *log << '\n';
    }
    reports.push_back(std::move(rep));
  }
  if (reports.empty()) throw ConfigError("verify: no matching suite");

  std::string csv = "suite,pass,checked,violations,detail\n";
  json summary;
  summary["kind"] = "verify";
  summary["suites"] = json::array();
  bool ok = true;
  for (const PropertyReport& rep : reports) {
    ok = ok && rep.pass;
    std::string detail = rep.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv += rep.name + ',' + (rep.pass ? "1" : "0") + ',' + std::to_string(rep.checked) + ',' +
           std::to_string(rep.violations) + ',' + detail + '\n';
    json r;
    r["name"] = rep.name;
    r["pass"] = rep.pass;
    r["checked"] = rep.checked;
    r["violations"] = rep.violations;
    r["detail"] = rep.detail;
    r["failing_seeds"] = rep.failing_seeds;
    summary["suites"].push_back(r);
  }
  write_file(dir / "results.csv", csv);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

int run_config(Config cfg, const RunOptions& opt) {
  const std::uint64_t seed = opt.seed_override.value_or(cfg.seed);
  cfg.seed = seed;
  cfg.plan.base_seed = seed;
  const int jobs = std::max(1, opt.jobs.value_or(1));
  cfg.plan.jobs = jobs;

  fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

  int status = 0;
  if (cfg.kind == "rate" || cfg.kind == "gauge")
    status = run_rate_like(cfg, dir);
  else if (cfg.kind == "phase")
    status = run_phase(cfg, dir);
  else if (cfg.kind == "cover")
    status = run_cover(cfg, dir, jobs);
  else if (cfg.kind == "simulate")
    status = run_simulate(cfg, dir, jobs);
  else if (cfg.kind == "branching")
    status = run_branching(cfg, dir, jobs);
  else if (cfg.kind == "verify")
    status = run_verify(cfg, dir, seed, opt.log);
  else
    throw ConfigError("run_config: unhandled kind '" + cfg.kind + "'");

  write_manifest(dir, cfg, seed);
  return status;
}

void replay_file(const std::string& realization_path, const std::string& ground_text,
                 std::ostream& out) {
  std::ifstream in(realization_path);
  if (!in) throw IoError("cannot open realization file '" + realization_path + "'");
  Realization r = load_realization(in);
  Ground ground = parse_ground_string(ground_text, r.d);
  HeapState state = run(r, ground);
  write_heap_dump(out, state);
}

}  // namespace hail
