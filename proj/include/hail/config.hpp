#pragma once

// Experiment configuration: one strict JSON schema. Unknown keys are rejected
// everywhere; seeds are 64-bit unsigned; replicate seeds derive from the base
// seed by a documented splittable construction.

#include <optional>
#include <string>

#include <json.hpp>

#include "hail/branching.hpp"
#include "hail/estimators.hpp"

namespace hail {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HitCheckSpec {
  double radius = 1.0;
  int replicates = 10000;
  Vec direction;
};

struct CoverTarget {
  std::vector<Vec> points;  // explicit points, or an eps-grid over a shape
};

struct Config {
  std::string kind;  // simulate | rate | phase | gauge | cover | branching | verify
  nlohmann::json raw;
  std::uint64_t seed = 1;

  ExperimentPlan plan;  // simulate / rate / phase / gauge / cover

  // simulate
  double sim_horizon = 0.0;
  int sim_replicates = 1;

  // phase
  Vec phase_direction;
  std::vector<double> phi_grid;
  double significance = 3.0;

  // gauge
  std::optional<HitCheckSpec> hit_check;

  // cover
  CoverTarget cover;
  double cover_horizon = 0.0;

  // branching
  BranchingSpec branching;
  int branching_n_max = 20;
  int branching_replicates = 1000;

  // verify
  std::vector<std::string> suites;
};

Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);  // throws ConfigError

// Shared sub-parsers (also used for CLI flags).
Ground parse_ground_json(const nlohmann::json& j, int d);
Ground parse_ground_string(const std::string& text, int d);

}  // namespace hail
