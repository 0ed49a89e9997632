#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hail/functionals.hpp"
#include "hail/verify.hpp"

using namespace hail;

namespace {
const double kPi = std::acos(-1.0);

HeapState fixture_state() { return run(fixture_a(), Ground::origin(1)); }
}  // namespace

TEST_CASE("maximal height: north pole and tilted ray on the fixture") {
  HeapState state = fixture_state();
  CHECK(max_height(state, ThetaSpec::north_pole()) == doctest::Approx(2.0));

  // Ray at phi = arctan 3 passes through (1.0, 3.0); stone 1 covers x = 1.0
  // with top 3.
  double phi = std::atan(3.0);
  CHECK(max_height(state, ThetaSpec::ray(Vec::of({1.0}), phi)) == doctest::Approx(3.0));

  HeapState empty(Ground::origin(1), Window::symmetric(1, 3.0, 1.0));
  CHECK(max_height(empty, ThetaSpec::north_pole()) == 0.0);
  CHECK(max_height(empty, ThetaSpec::cap(0.3)) == 0.0);
  CHECK(max_height(empty, ThetaSpec::ray(Vec::of({1.0}), 0.5)) == 0.0);
}

TEST_CASE("vertical ray coincides with the north pole") {
  HeapState state = fixture_state();
  CHECK(max_height(state, ThetaSpec::ray(Vec::of({1.0}), kPi / 2)) ==
        max_height(state, ThetaSpec::north_pole()));
}

TEST_CASE("vertical cap: capped contribution is the top or nothing") {
  HeapState state = fixture_state();
  // Stone 0 touches the origin (distance 0): contributes its top 2 at any cap.
  // Stone 1 sits at distance 0.7: contributes top 3 iff 0.7 <= 3 tan(alpha).
  CHECK(max_height(state, ThetaSpec::cap(0.20)) == doctest::Approx(2.0));
  CHECK(max_height(state, ThetaSpec::cap(0.25)) == doctest::Approx(3.0));
  CHECK(max_height(state, ThetaSpec::cap(kPi / 2)) == doctest::Approx(3.0));  // sup over space
}

TEST_CASE("spatial cone direction sets") {
  HeapState state = fixture_state();
  ConeSpec right{Vec::zero(1), Vec::of({1.0}), kPi / 2};
  CHECK(max_height(state, ThetaSpec::spatial_cone(right)) == doctest::Approx(3.0));
  ConeSpec far_left{Vec::of({-3.0}), Vec::of({-1.0}), kPi / 2};
  CHECK(max_height(state, ThetaSpec::spatial_cone(far_left)) == 0.0);
}

TEST_CASE("gauge distances on the fixture") {
  HeapState state = fixture_state();
  CHECK(gauge_distance(state, GaugeSpec::point(Vec::of({1.0}))) == doctest::Approx(1.3));
  CHECK(gauge_distance(state, GaugeSpec::point(Vec::of({-1.0}))) == doctest::Approx(0.2));
  CHECK(gauge_distance(state, GaugeSpec::ray(Vec::of({1.0}))) == doctest::Approx(1.3));
  CHECK(gauge_distance(state, GaugeSpec::half_space(Vec::of({1.0}), Vec::of({1.0}))) ==
        doctest::Approx(1.3));

  HeapState empty(Ground::origin(1), Window::symmetric(1, 3.0, 1.0));
  CHECK(gauge_distance(empty, GaugeSpec::point(Vec::of({1.0}))) == 0.0);
  CHECK(gauge_distance(empty, GaugeSpec::ray(Vec::of({1.0}))) == 0.0);
  CHECK(gauge_distance(empty, GaugeSpec::half_space(Vec::of({1.0}), Vec::of({1.0}))) == 0.0);
}

TEST_CASE("point gauge merges tangent intervals across a gap-free chain") {
  Realization r;
  r.d = 1;
  r.lambda = 1;
  r.window = Window::symmetric(1, 5.0, 3.0);
  auto mk = [](double x, double t, double radius) {
    Arrival a;
    a.position = Vec::of({x});
    a.time = t;
    a.mark.shape = Shape::ball(Vec::zero(1), radius);
    a.mark.sigma = 1.0;
    return a;
  };
  // [-0.5, 0.5] then the tangent [0.5, 1.5]: reach 1.5; then a gap.
  r.arrivals = {mk(0.0, 0.5, 0.5), mk(1.0, 1.0, 0.5), mk(3.0, 2.0, 0.5)};
  HeapState state = run(r, Ground::origin(1));
  REQUIRE(state.placed().size() == 2);  // the third stone missed the heap
  CHECK(gauge_distance(state, GaugeSpec::point(Vec::of({1.0}))) == doctest::Approx(1.5));
}

TEST_CASE("gauge axioms are validated") {
  CHECK_THROWS_AS(GaugeSpec::half_space(Vec::of({1.0, 0.0}), Vec::of({-1.0, 0.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::ray(Vec::of({1.0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::cap(2.0), std::invalid_argument);
}

TEST_CASE("footprint diameter") {
  HeapState empty(Ground::origin(1), Window::symmetric(1, 3.0, 1.0));
  CHECK(footprint_diameter(empty) == 0.0);
  CHECK(footprint_diameter(fixture_state()) == doctest::Approx(1.5));

  Realization r;
  r.d = 2;
  r.lambda = 1;
  r.window = Window::symmetric(2, 6.0, 2.0);
  auto mk = [](double x, double y, double t) {
    Arrival a;
    a.position = Vec::of({x, y});
    a.time = t;
    a.mark.shape = Shape::ball(Vec::zero(2), 1.0);
    a.mark.sigma = 1.0;
    return a;
  };
  r.arrivals = {mk(0, 0, 0.5), mk(3, 0, 1.0)};
  HeapState two = run(r, Ground::full_space(2));
  CHECK(footprint_diameter(two) == doctest::Approx(5.0));
}

TEST_CASE("cover time on the fixture") {
  HeapState state = fixture_state();
  CHECK(cover_time(state, {Vec::of({0.5}), Vec::of({1.0})}) == doctest::Approx(2.0));
  CHECK(cover_time(state, {}) == 0.0);
  CHECK(cover_time(state, {Vec::of({4.9})}) == kInf);  // that stone was discarded
}

TEST_CASE("cover grids stay inside the region and respect the pitch") {
  Shape ball = Shape::ball(Vec::of({1.0, -0.5}), 0.8);
  auto pts = cover_grid(ball, 0.2);
  CHECK(!pts.empty());
  for (const Vec& p : pts) CHECK(contains_point(ball, p));
}

TEST_CASE("functionals are invariant under permutation of the placed list") {
  Realization r = generate(31, 1.5, Window::symmetric(2, 3.0, 3.0), MarkSpec::fixed_ball(0.4, 1.0));
  HeapState state = run(r, Ground::origin(2));
  REQUIRE(state.placed().size() >= 3);

  std::vector<PlacedStone> shuffled = state.placed();
  std::mt19937 g(4);
  std::shuffle(shuffled.begin(), shuffled.end(), g);
  HeapState permuted =
      HeapState::assemble(state.ground(), state.window(), shuffled, {});

  for (const auto& theta :
       {ThetaSpec::north_pole(), ThetaSpec::cap(0.4), ThetaSpec::ray(Vec::of({0.6, 0.8}), 0.7)}) {
    CHECK(max_height(state, theta) == doctest::Approx(max_height(permuted, theta)));
  }
  for (const auto& gauge : {GaugeSpec::point(Vec::of({1.0, 0.0})), GaugeSpec::ray(Vec::of({0.0, 1.0})),
                            GaugeSpec::half_space(Vec::of({1.0, 0.0}), Vec::of({1.0, 0.0}))}) {
    CHECK(gauge_distance(state, gauge) == doctest::Approx(gauge_distance(permuted, gauge)));
  }
  CHECK(footprint_diameter(state) == doctest::Approx(footprint_diameter(permuted)));
  CHECK(cover_time(state, {state.placed()[0].footprint.center}) ==
        doctest::Approx(cover_time(permuted, {state.placed()[0].footprint.center})));
}

TEST_CASE("gauge domination and direction-set monotonicity") {
  PropertyReport rep = verify_gauge_domination(313, 40);
  CAPTURE(rep.detail);
  CHECK(rep.pass);
}

TEST_CASE("functional keys parse and evaluate") {
  HeapState state = fixture_state();
  CHECK(parse_functional("north_pole", 1).evaluate(state) == doctest::Approx(2.0));
  CHECK(parse_functional("cap:alpha=0.25", 1).evaluate(state) == doctest::Approx(3.0));
  CHECK(parse_functional("gauge:point:v=1", 1).evaluate(state) == doctest::Approx(1.3));
  CHECK(parse_functional("gauge:halfspace:w=1", 1).evaluate(state) == doctest::Approx(1.3));
  CHECK(parse_functional("gauge:ray:v=-1", 1).evaluate(state) == doctest::Approx(0.2));
  CHECK(parse_functional("cone:apex=0;axis=1;alpha=0.7", 1).evaluate(state) ==
        doctest::Approx(3.0));
  CHECK(parse_functional("height_at:x=0.75", 1).evaluate(state) == doctest::Approx(3.0));
  CHECK(parse_functional(height_at_key(Vec::of({4.0})), 1).evaluate(state) == 0.0);

  CHECK_THROWS_AS(parse_functional("nope", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_functional("ray:w=1", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_functional("gauge:halfspace:w=1;v=-1", 1), std::invalid_argument);
}
