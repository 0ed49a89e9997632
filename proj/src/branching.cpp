#include "hail/branching.hpp"

#include "hail/text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hail {

OffspringDist OffspringDist::constant(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("OffspringDist: constant count must be >= 0");
  OffspringDist d;
  d.family = OffspringFamily::Constant;
  d.count = k;
  return d;
}

OffspringDist OffspringDist::binomial(std::int64_t n, double p) {
  if (n < 0 || p < 0 || p > 1) throw std::invalid_argument("OffspringDist: bad binomial");
  OffspringDist d;
  d.family = OffspringFamily::Binomial;
  d.trials = n;
  d.p = p;
  return d;
}

OffspringDist OffspringDist::poisson(double mean) {
  if (!(mean >= 0)) throw std::invalid_argument("OffspringDist: poisson mean must be >= 0");
  OffspringDist d;
  d.family = OffspringFamily::Poisson;
  d.mean_ = mean;
  return d;
}

OffspringDist OffspringDist::one_plus_poisson(double mean) {
  OffspringDist d = poisson(mean);
  d.family = OffspringFamily::OnePlusPoisson;
  return d;
}

std::int64_t OffspringDist::sample(RngStream& rng) const {
  switch (family) {
    case OffspringFamily::Constant:
      return count;
    case OffspringFamily::Binomial: {
      std::binomial_distribution<std::int64_t> dist(trials, p);
      return dist(rng);
    }
    case OffspringFamily::Poisson:
      return poisson_count(rng, mean_);
    case OffspringFamily::OnePlusPoisson:
      return 1 + poisson_count(rng, mean_);
  }
  return 0;
}

double OffspringDist::mean() const {
  switch (family) {
    case OffspringFamily::Constant:
      return static_cast<double>(count);
    case OffspringFamily::Binomial:
      return static_cast<double>(trials) * p;
    case OffspringFamily::Poisson:
      return mean_;
    case OffspringFamily::OnePlusPoisson:
      return 1.0 + mean_;
  }
  return 0;
}

void BranchingSpec::validate() const {
  // Offspring families are light-tailed by construction (bounded or Poisson).
  if (height.family == DistFamily::Uniform)
    throw std::invalid_argument("BranchingSpec: height must be constant, exponential or truncated");
  if (population_cap < 1) throw std::invalid_argument("BranchingSpec: bad population cap");
}

GenerationState GenerationState::root() {
  GenerationState s;
  s.lineage_heights = {0.0};
  return s;
}

void advance(GenerationState& state, const BranchingSpec& spec, RngStream& rng) {
  if (state.extinct || state.censored) {
    ++state.n;
    return;
  }
  std::vector<double> next;
  next.reserve(state.lineage_heights.size());
  for (double h : state.lineage_heights) {
    const std::int64_t v = spec.offspring.sample(rng);
    if (v == 0) continue;
    const double s = spec.height.sample(rng);  // shared by all children of this individual
    if (static_cast<std::int64_t>(next.size()) + v > spec.population_cap) {
      state.censored = true;
      break;
    }
    next.insert(next.end(), static_cast<std::size_t>(v), h + s);
  }
  ++state.n;
  state.lineage_heights = std::move(next);
  if (state.lineage_heights.empty()) {
    if (!state.censored) state.extinct = true;
  } else {
    state.max_height =
        std::max(state.max_height,
                 *std::max_element(state.lineage_heights.begin(), state.lineage_heights.end()));
  }
}

BranchingRun simulate_branching(const BranchingSpec& spec, int n_max, RngStream& rng) {
  spec.validate();
  BranchingRun run;
  GenerationState state = GenerationState::root();
  run.d_n.push_back(state.population());
  run.h_n.push_back(0.0);
  for (int n = 0; n < n_max; ++n) {
    advance(state, spec, rng);
    run.d_n.push_back(state.population());
    run.h_n.push_back(state.max_height);
    if (state.censored) break;
  }
  run.censored = state.censored;
  return run;
}

BranchingRate max_height_rate(const BranchingSpec& spec, int n_max, int replicates,
                              std::uint64_t seed, int jobs) {
  if (n_max < 1 || replicates < 1) throw std::invalid_argument("max_height_rate: bad sizes");
  BranchingRate out;
  out.n_max = n_max;
  out.replicates = replicates;

  std::vector<double> rates(replicates, 0.0);
  std::vector<std::uint8_t> censored(replicates, 0);
  std::vector<std::vector<std::int64_t>> populations(replicates);
  std::vector<std::vector<double>> heights(replicates);

  jobs = std::max(1, std::min(jobs, replicates));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < replicates; i = next.fetch_add(1)) {
      RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      BranchingRun run = simulate_branching(spec, n_max, rng);
      rates[i] = run.h_n.back() / n_max;
      censored[i] = run.censored ? 1 : 0;
      populations[i] = std::move(run.d_n);
      heights[i] = std::move(run.h_n);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double mean = 0;
  int used = 0;
  for (int i = 0; i < replicates; ++i) {
    if (censored[i]) {
      ++out.censored_runs;
      continue;
    }
    mean += rates[i];
    ++used;
  }
  if (used == 0) throw AllContaminatedError("max_height_rate: every run hit the population cap");
  mean /= used;
  double ss = 0;
  for (int i = 0; i < replicates; ++i)
    if (!censored[i]) ss += (rates[i] - mean) * (rates[i] - mean);
  out.rate = mean;
  out.std_error = used > 1 ? std::sqrt(ss / (used - 1)) / std::sqrt(double(used)) : 0.0;

  const auto gens = static_cast<std::size_t>(n_max) + 1;
  out.mean_d_n.assign(gens, 0.0);
  out.mean_h_n.assign(gens, 0.0);
  out.se_h_n.assign(gens, 0.0);
  for (int i = 0; i < replicates; ++i) {
    if (censored[i]) continue;
    for (std::size_t n = 0; n < gens; ++n) {
      out.mean_d_n[n] += n < populations[i].size() ? static_cast<double>(populations[i][n]) : 0.0;
      out.mean_h_n[n] += n < heights[i].size() ? heights[i][n] : heights[i].back();
    }
  }
  for (double& v : out.mean_d_n) v /= used;
  for (double& v : out.mean_h_n) v /= used;
  if (used > 1) {
    for (int i = 0; i < replicates; ++i) {
      if (censored[i]) continue;
      for (std::size_t n = 0; n < gens; ++n) {
        double h = n < heights[i].size() ? heights[i][n] : heights[i].back();
        out.se_h_n[n] += (h - out.mean_h_n[n]) * (h - out.mean_h_n[n]);
      }
    }
    for (double& v : out.se_h_n) v = std::sqrt(v / (used - 1)) / std::sqrt(double(used));
  }
  return out;
}

DominanceReport dominance_check(const ExperimentPlan& heap_plan, const BranchingSpec& matched,
                                int n_max, int replicates, double slab_duration) {
  DominanceReport rep;
  ExperimentPlan plan = heap_plan;
  plan.functionals = {"cap:alpha=" + format_double(std::acos(-1.0) / 2)};  // full hemisphere
  RateEstimate heap = rate(plan)[0];
  // Per-slab units: one branching generation covers slab_duration of heap time.
  rep.heap_rate = heap.slope * slab_duration;
  rep.heap_std_error = heap.std_error * slab_duration;

  BranchingRate br = max_height_rate(matched, n_max, replicates, heap_plan.base_seed + 1);
  rep.branching_rate = br.rate;
  rep.branching_std_error = br.std_error;

  double combined = std::sqrt(rep.heap_std_error * rep.heap_std_error +
                              rep.branching_std_error * rep.branching_std_error);
  rep.pass = rep.heap_rate <= rep.branching_rate + 3.0 * combined;
  return rep;
}

}  // namespace hail
