#include <doctest.h>

#include <cmath>

#include "hail/branching.hpp"

using namespace hail;

TEST_CASE("deterministic chains: v=1,s=1 and v=2,s=1 grow one level per generation") {
  BranchingSpec unit{OffspringDist::constant(1), Dist::constant(1.0)};
  RngStream rng(1);
  BranchingRun run1 = simulate_branching(unit, 12, rng);
  for (std::size_t n = 0; n < run1.d_n.size(); ++n) {
    CHECK(run1.d_n[n] == 1);
    CHECK(run1.h_n[n] == doctest::Approx(double(n)));
  }
  BranchingRate r1 = max_height_rate(unit, 12, 10, 3);
  CHECK(r1.rate == 1.0);
  CHECK(r1.std_error == 0.0);

  BranchingSpec two{OffspringDist::constant(2), Dist::constant(1.0)};
  BranchingRate r2 = max_height_rate(two, 18, 5, 3);
  CHECK(r2.rate == 1.0);
  CHECK(r2.censored_runs == 0);
  CHECK(r2.mean_d_n[18] == doctest::Approx(std::pow(2.0, 18)));
}

TEST_CASE("v=0: extinction at generation 1, heights frozen at zero") {
  BranchingSpec dead{OffspringDist::constant(0), Dist::constant(1.0)};
  RngStream rng(2);
  BranchingRun run = simulate_branching(dead, 5, rng);
  CHECK(run.d_n[1] == 0);
  CHECK(run.h_n.back() == 0.0);
  BranchingRate r = max_height_rate(dead, 5, 10, 3);
  CHECK(r.rate == 0.0);
}

TEST_CASE("children of one individual share one height draw") {
  BranchingSpec spec{OffspringDist::constant(2), Dist::exponential(1.0)};
  RngStream rng(5);
  GenerationState state = GenerationState::root();
  advance(state, spec, rng);
  REQUIRE(state.population() == 2);
  CHECK(state.lineage_heights[0] == state.lineage_heights[1]);
  advance(state, spec, rng);
  REQUIRE(state.population() == 4);
  CHECK(state.lineage_heights[0] == state.lineage_heights[1]);
  CHECK(state.lineage_heights[2] == state.lineage_heights[3]);
}

TEST_CASE("population mean matches (E v)^n within 4 standard errors") {
  BranchingSpec spec{OffspringDist::poisson(1.2), Dist::constant(1.0)};
  const int n = 6, reps = 3000;
  BranchingRate r = max_height_rate(spec, n, reps, 11);
  // Sample the per-run d_n to estimate its spread at the last generation.
  double expected = std::pow(1.2, n);
  double sum = 0, sumsq = 0;
  for (int i = 0; i < reps; ++i) {
    RngStream rng(derive_seed(11, i));
    double dn = static_cast<double>(simulate_branching(spec, n, rng).d_n[n]);
    sum += dn;
    sumsq += dn * dn;
  }
  double mean = sum / reps;
  double sd = std::sqrt((sumsq - reps * mean * mean) / (reps - 1));
  CHECK(std::abs(mean - expected) <= 4.0 * sd / std::sqrt(double(reps)));
  CHECK(r.mean_d_n[n] == doctest::Approx(mean));
}

TEST_CASE("population cap censors supercritical runs") {
  BranchingSpec spec{OffspringDist::constant(3), Dist::constant(1.0)};
  spec.population_cap = 100;
  RngStream rng(3);
  BranchingRun run = simulate_branching(spec, 30, rng);
  CHECK(run.censored);
  CHECK(run.d_n.size() < 31u);
  CHECK_THROWS_AS(max_height_rate(spec, 30, 4, 3), AllContaminatedError);
}

TEST_CASE("binomial and shifted-poisson offspring sample sanely") {
  RngStream rng(6);
  OffspringDist bin = OffspringDist::binomial(4, 0.5);
  OffspringDist opp = OffspringDist::one_plus_poisson(1.0);
  for (int i = 0; i < 2000; ++i) {
    auto b = bin.sample(rng);
    CHECK(b >= 0);
    CHECK(b <= 4);
    CHECK(opp.sample(rng) >= 1);
  }
  CHECK(bin.mean() == doctest::Approx(2.0));
  CHECK(opp.mean() == doctest::Approx(2.0));
}

TEST_CASE("dominance check: matched spec passes, undersized spec fails") {
  ExperimentPlan plan;
  plan.d = 1;
  plan.lambda = 0.5;
  plan.marks = MarkSpec::fixed_ball(0.5, 1.0);
  plan.ground = Ground::origin(1);
  plan.functionals = {"north_pole"};  // replaced by the full-hemisphere cap inside
  plan.checkpoints = {4.0, 8.0, 12.0, 16.0};
  plan.replicates = 40;
  plan.base_seed = 21;
  plan.window.half_width = 14.0;

  // Matched construction per time slab of length 0.5: stones whose footprint
  // can touch a given stone arrive at rate lambda * |C + (-C)| = lambda * 4r
  // = 1 per unit time, so Poisson(0.5) per slab; the parent lineage persists
  // into the next slab, and every child inherits the per-slab height bound
  // s = sigma_max = 1. The short slab keeps within-slab chain stacking below
  // the bound.
  const double slab = 0.5;
  BranchingSpec matched{OffspringDist::one_plus_poisson(plan.lambda * 4 * 0.5 * slab),
                        Dist::constant(1.0)};
  matched.population_cap = 2'000'000;
  DominanceReport ok = dominance_check(plan, matched, 32, 40, slab);
  CAPTURE(ok.heap_rate);
  CAPTURE(ok.branching_rate);
  CHECK(ok.pass);
  CHECK(ok.branching_rate == doctest::Approx(1.0));

  BranchingSpec undersized{OffspringDist::constant(0), Dist::constant(1.0)};
  DominanceReport bad = dominance_check(plan, undersized, 32, 40, slab);
  CHECK_FALSE(bad.pass);  // the check has power
}

TEST_CASE("lambda-zero heap is dominated by anything") {
  ExperimentPlan plan;
  plan.d = 1;
  plan.lambda = 0.0;
  plan.marks = MarkSpec::fixed_ball(0.5, 1.0);
  plan.ground = Ground::origin(1);
  plan.functionals = {"north_pole"};
  plan.checkpoints = {2.0, 4.0};
  plan.replicates = 4;
  plan.base_seed = 22;
  plan.window.half_width = 5.0;
  BranchingSpec any{OffspringDist::constant(1), Dist::constant(1.0)};
  CHECK(dominance_check(plan, any, 5, 10).pass);
}
