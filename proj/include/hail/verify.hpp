#pragma once

// Executable property suites: placement/monotonicity structure, the
// superadditive height inequality, cone-ground time-reversal duality,
// the diameter-height coupling, gauge domination, engine equivalence
// against the brute-force oracle, and determinism. Each suite runs canned
// fixtures plus seeded random instances and reports counterexample seeds.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hail/branching.hpp"
#include "hail/estimators.hpp"

namespace hail {

struct PropertyReport {
  std::string name;
  bool pass = true;
  long checked = 0;
  long violations = 0;
  std::string detail;  // first failure, human-readable
  std::vector<std::uint64_t> failing_seeds;

  void fail(std::uint64_t seed, const std::string& what);
};

// Three hand-traced arrivals on the stick ground (d = 1): the canonical
// fixture used across tests and the replay examples.
Realization fixture_a();

// Canned hand-traced cases (single-stone duality, fixture heap traces).
PropertyReport verify_fixture_cases();

// run == brute_force_run stone-by-stone over random instances spanning
// d in {1,2,3}, both shape families, lambda in {0.2, 1, 5}, all ground kinds.
PropertyReport verify_oracle_equivalence(std::uint64_t seed, int n_realizations);

// Coupled-run monotonicity in the substrate, in time, in one sigma, in one
// footprint; heights probed at sampled (x, event-time) pairs never decrease.
PropertyReport verify_monotonicity(std::uint64_t seed, int n_pairs, int probes_per_pair);

// H_{(x+y,t2)} >= H_{(x,t1)} + H'_{(y,t2-t1)} with the shifted sub-run on
// ground {0}; -inf plus anything stays -inf.
PropertyReport verify_superadditivity(std::uint64_t seed, int n_tuples);

// Exact pathwise equality of the cone-ground apex height and the reversed
// stick-model height over the cone's direction set.
PropertyReport verify_cone_duality(std::uint64_t seed, int n_realizations);

// With sigma = diam(C) and ground {0}: 4 sup_x H >= diam(F_t).
PropertyReport verify_diameter_coupling(std::uint64_t seed, int n_realizations);

// D^{A,v} <= D^{A',w} <= diam(F)/(v.w) against the separating half-space,
// plus monotonicity of the maximal height in the direction set.
PropertyReport verify_gauge_domination(std::uint64_t seed, int n_realizations);

// Poisson counts (mean/variance, disjoint-window independence), shift group
// property, reversal involution and multiset preservation, mark coupling.
PropertyReport verify_rain_properties(std::uint64_t seed);

// Same seed => identical realizations; rate() identical across jobs 1 and 4.
PropertyReport verify_determinism(std::uint64_t seed);

struct SuiteEntry {
  std::string name;
  std::function<PropertyReport(std::uint64_t)> run;  // desk-scale defaults
};

// All suites, keyed for the CLI `verify --suite` selector.
std::vector<SuiteEntry> verification_suites();

}  // namespace hail
