#pragma once

// Monte Carlo drivers that turn per-realization functionals into estimates of
// the growth-rate constants. Replicate i draws from derive_seed(base, i), so
// estimates are bit-identical for any degree of parallelism.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hail/functionals.hpp"

namespace hail {

enum class Censoring { RerunThenExclude, Exclude, Keep };
enum class RateMethod { IncrementMean, ThroughOriginLS };

struct WindowPolicy {
  std::optional<double> half_width;  // symmetric per-axis; derived when unset
  std::optional<double> r_cut;       // truncation radius; derived when unset
  Censoring censoring = Censoring::RerunThenExclude;
};

struct ExperimentPlan {
  int d = 1;
  double lambda = 1.0;
  MarkSpec marks;
  Ground ground = Ground::origin(1);
  std::vector<std::string> functionals;
  std::vector<double> checkpoints;  // positive, strictly increasing
  int replicates = 2;
  std::uint64_t base_seed = 1;
  WindowPolicy window;
  RateMethod method = RateMethod::IncrementMean;
  int jobs = 1;

  double horizon() const { return checkpoints.empty() ? 0.0 : checkpoints.back(); }
  void validate() const;
};

struct RateEstimate {
  std::string functional;
  double slope = 0.0;
  double std_error = 0.0;
  double sup_mean_rate = 0.0;      // max_k mean(value at t_k) / t_k
  double sup_mean_std_error = 0.0; // standard error at the attaining checkpoint
  std::vector<double> checkpoint_means;
  int n_replicates = 0;  // included in the estimate
  int n_excluded = 0;
  double contamination_rate = 0.0;  // flagged fraction after the censoring rule
  RateMethod method = RateMethod::IncrementMean;
};

struct AllContaminatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pure aggregation over a [replicate][checkpoint] value table (unit-testable
// with synthetic inputs).
RateEstimate aggregate_rate(const std::string& key,
                            const std::vector<std::vector<double>>& values,
                            const std::vector<double>& checkpoints, RateMethod method);

// Resolved window geometry for a plan (explicit settings win; otherwise the
// truncation radius is the 0.9999 diameter quantile plus the ground extent,
// and the half-width adds a spread allowance linear in the horizon).
struct ResolvedWindow {
  Window window;
  double r_cut = 0.0;
};
ResolvedWindow resolve_window(const ExperimentPlan& plan);

// Full per-replicate output, for plot emission and cross-checks.
struct RateRun {
  std::vector<RateEstimate> estimates;                       // per functional
  std::vector<std::vector<std::vector<double>>> values;      // [functional][replicate][checkpoint]
  std::vector<std::uint8_t> excluded;                        // per replicate
};

RateRun rate_run(const ExperimentPlan& plan);

// One estimate per functional key; shared realizations across keys.
std::vector<RateEstimate> rate(const ExperimentPlan& plan);

double sup_mean_rate(const ExperimentPlan& plan);  // single-functional plans

// Full-precision key for the tilted-ray functional, e.g. "ray:w=1;phi=0.5".
std::string ray_key(const Vec& w, double phi);

RateEstimate directional_rate(const ExperimentPlan& plan, const Vec& w, double phi);

struct PhaseCell {
  double phi = 0.0;
  RateEstimate estimate;
  bool positive = false;  // slope > significance * std_error
};

struct PhaseResult {
  double phi_lo = 0.0;  // largest statistically-zero angle below the transition
  double phi_hi = 0.0;  // first statistically-positive angle
  bool transition_found = false;
  bool monotone = true;  // no positive-then-zero inversion along the grid
  std::vector<PhaseCell> cells;
  std::string diagnostic;
};

// Plan evaluating the tilted-ray functional at every grid angle on shared
// realizations, and the pure bracket extraction over its estimates.
ExperimentPlan phase_plan(const ExperimentPlan& base, const Vec& w,
                          const std::vector<double>& phi_grid);
PhaseResult phase_bracket(const std::vector<RateEstimate>& estimates,
                          const std::vector<double>& phi_grid, double significance);

PhaseResult phase_angle(const ExperimentPlan& plan, const Vec& w,
                        const std::vector<double>& phi_grid, double significance = 3.0);

struct HitProbabilityReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  // 1 - exp(-lambda |B_{r/2}|)
  int replicates = 0;
  bool pass = false;  // estimate >= bound - 4 SE
};

HitProbabilityReport hit_probability_check(int d, double lambda, double r, const Vec& v,
                                           int replicates, std::uint64_t seed, int jobs = 1);

double ball_volume(int d, double radius);

}  // namespace hail
