#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hail/heap.hpp"
#include "hail/verify.hpp"

using namespace hail;

TEST_CASE("initial heights per ground") {
  const Window w = Window::symmetric(2, 3.0, 2.0);
  HeapState pt(Ground::origin(1), Window::symmetric(1, 3.0, 2.0));
  CHECK(pt.height(Vec::of({0.0})) == 0.0);
  CHECK(pt.height(Vec::of({1.0})) == -kInf);

  HeapState full(Ground::full_space(2), w);
  CHECK(full.height(Vec::of({1.7, -2.0})) == 0.0);

  HeapState cone(Ground::make_cone(Vec::zero(2), Vec::of({1.0, 0.0}), std::acos(-1.0) / 4), w);
  CHECK(cone.height(Vec::of({1.0, 1.0})) == 0.0);
  CHECK(cone.height(Vec::of({-1.0, 0.0})) == -kInf);
}

TEST_CASE("fixture heap: step outcomes, heights, footprint, ancestry") {
  Realization r = fixture_a();
  HeapState state(Ground::origin(1), r.window, median_footprint_diameter(r));

  StepOutcome s1 = state.step(r.arrivals[0]);
  CHECK(s1.placed);
  CHECK(s1.top == doctest::Approx(2.0));  // grounded at 0

  StepOutcome s2 = state.step(r.arrivals[1]);
  CHECK(s2.placed);
  CHECK(s2.top == doctest::Approx(3.0));  // stacks on stone 0 via [0.7, 0.8]

  StepOutcome s3 = state.step(r.arrivals[2]);
  CHECK_FALSE(s3.placed);  // touches nothing

  CHECK(state.placed().size() == 2);
  CHECK(state.height(Vec::of({0.0})) == doctest::Approx(2.0));
  CHECK(state.height(Vec::of({0.75})) == doctest::Approx(3.0));  // covered by both
  CHECK(state.height(Vec::of({4.0})) == -kInf);

  // F = [-0.2, 1.3]
  CHECK(state.placed()[0].footprint.bbox_lo(0) == doctest::Approx(-0.2));
  CHECK(state.placed()[1].footprint.bbox_hi(0) == doctest::Approx(1.3));

  CHECK(ancestry(state, 1) == std::vector<std::uint32_t>{0});
  CHECK(ancestry(state, 0).empty());
  CHECK_THROWS_AS(ancestry(state, 7), std::out_of_range);

  CHECK(state.event_log().size() == 3);
  CHECK(state.event_log()[2].kind == EventKind::Discarded);
}

TEST_CASE("unit geometry of the height recursion holds on the fixture for run()") {
  Realization r = fixture_a();
  HeapState state = run(r, Ground::origin(1));
  CHECK(state.placed().size() == 2);
  CHECK(state.placed()[0].top == doctest::Approx(2.0));
  CHECK(state.placed()[1].top == doctest::Approx(3.0));
  CHECK(same_outcome(state, brute_force_run(r, Ground::origin(1))));
}

TEST_CASE("out-of-order arrivals are rejected") {
  Realization r = fixture_a();
  HeapState state(Ground::origin(1), r.window);
  state.step(r.arrivals[1]);  // t = 2
  CHECK_THROWS_AS(state.step(r.arrivals[0]), std::invalid_argument);  // t = 1
}

TEST_CASE("empty realization and full-space ground") {
  Realization empty;
  empty.d = 1;
  empty.window = Window::symmetric(1, 3.0, 1.0);
  CHECK(run(empty, Ground::origin(1)).placed().empty());

  Realization r = generate(21, 1.5, Window::symmetric(2, 2.5, 2.0), MarkSpec::fixed_ball(0.4, 1.0));
  HeapState full = run(r, Ground::full_space(2));
  CHECK(full.placed().size() == r.arrivals.size());  // H >= 0 everywhere
}

TEST_CASE("chain of three sequentially overlapping stones: transitive ancestry") {
  Realization r;
  r.d = 1;
  r.lambda = 1;
  r.window = Window::symmetric(1, 4.0, 4.0);
  auto mk = [](double x, double t) {
    Arrival a;
    a.position = Vec::of({x});
    a.time = t;
    a.mark.shape = Shape::ball(Vec::zero(1), 0.5);
    a.mark.sigma = 1.0;
    return a;
  };
  r.arrivals = {mk(0.0, 1.0), mk(0.7, 2.0), mk(1.4, 3.0)};
  HeapState state = run(r, Ground::origin(1));
  REQUIRE(state.placed().size() == 3);
  CHECK(state.placed()[2].parents == std::vector<std::uint32_t>{1});
  CHECK(ancestry(state, 2) == std::vector<std::uint32_t>{0, 1});
  CHECK(state.placed()[2].top == doctest::Approx(3.0));
}

TEST_CASE("indexed engine matches the brute-force oracle on random instances") {
  PropertyReport rep = verify_oracle_equivalence(2024, 120);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
  CHECK(rep.checked == 120);
}

TEST_CASE("height is monotone in substrate, time, sigma and footprint") {
  PropertyReport rep = verify_monotonicity(77, 12, 200);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("superadditive height inequality") {
  PropertyReport rep = verify_superadditivity(88, 60);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("cone duality holds pathwise on random instances") {
  PropertyReport rep = verify_cone_duality(99, 60);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("diameter-height coupling with sigma = diam") {
  PropertyReport rep = verify_diameter_coupling(111, 40);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("fixture cases suite") {
  PropertyReport rep = verify_fixture_cases();
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("heap dump lists stones and discards") {
  Realization r = fixture_a();
  HeapState state = run(r, Ground::origin(1));
  std::ostringstream os;
  write_heap_dump(os, state);
  std::string dump = os.str();
  CHECK(dump.find("placed 2") != std::string::npos);
  CHECK(dump.find("discarded 1") != std::string::npos);
  CHECK(dump.find("0 1 2 ball 0.3 0.5") != std::string::npos);  // id t top shape x r
}
