// hailstorm: experiment runner and verification entry point for the stochastic
// hail-stacking simulator. Subcommands mirror the config kinds; `replay` turns
// a realization file into a heap dump for diffing.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hail/runner.hpp"
#include "hail/version.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("HAILSTORM_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (...) {
    std::cerr << "warning: ignoring unparsable HAILSTORM_SEED\n";
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hailstorm: Poisson-rain stone-stacking simulator and estimator"};
  app.set_version_flag("--version", hail::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite = "all", ground_text = "origin";
  std::string realization_path;
  std::optional<std::uint64_t> seed_flag;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", config_path, "JSON config file");
    if (needs_config) c->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed_flag, "seed override");
    cmd->add_option("--jobs", jobs, "parallel replicate workers")->check(CLI::PositiveNumber);
  };

  const char* kinds[] = {"simulate", "rate", "phase", "gauge", "cover", "branching"};
  for (const char* kind : kinds)
    add_common(app.add_subcommand(kind, std::string("run a ") + kind + " experiment"), true);

  auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--suite", suite, "suite name (default: all)");

  auto* replay_cmd = app.add_subcommand("replay", "realization file -> heap dump");
  replay_cmd->add_option("file", realization_path, "realization file")->required();
  replay_cmd->add_option("--ground", ground_text,
                         "ground spec, e.g. origin | points:0 0|1 1 | ball:0;0.5 | "
                         "cone:0;1;0.785 | halfspace:1;0 | full");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "replay") {
      hail::replay_file(realization_path, ground_text, std::cout);
      return 0;
    }

    hail::Config cfg;
    if (!config_path.empty()) {
      cfg = hail::load_config(config_path);
      if (name != cfg.kind)
        throw hail::ConfigError("config kind '" + cfg.kind + "' does not match subcommand '" +
                                name + "'");
    } else {
      nlohmann::json j;
      j["kind"] = name;  // verify without a config file
      cfg = hail::parse_config(j);
    }
    if (name == "verify" && suite != "all") cfg.suites = {suite};

    hail::RunOptions opt;
    opt.out_dir = out_dir;
    opt.jobs = jobs;
    opt.seed_override = seed_flag ? seed_flag : env_seed();
    opt.log = &std::cout;
    return hail::run_config(std::move(cfg), opt);
  } catch (const hail::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const hail::AllContaminatedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const hail::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
