#include <doctest.h>

#include <cmath>

#include "hail/geometry.hpp"
#include "hail/rng.hpp"

using namespace hail;

namespace {

Shape random_shape(RngStream& rng, int d, double center_span = 2.0) {
  Vec c(d);
  for (int i = 0; i < d; ++i) c[i] = uniform(rng, -center_span, center_span);
  if (rng() & 1) return Shape::ball(c, uniform(rng, 0.1, 1.0));
  Vec hw(d);
  for (int i = 0; i < d; ++i) hw[i] = uniform(rng, 0.1, 1.0);
  return Shape::box(c, hw);
}

Vec random_unit_vec(RngStream& rng, int d) {
  while (true) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(rng, -1.0, 1.0);
    double n = v.norm();
    if (n > 0.2 && n <= 1.0) return v * (1.0 / n);
  }
}

}  // namespace

TEST_CASE("diameter of balls and boxes") {
  CHECK(Shape::ball(Vec::zero(1), 0.5).diameter() == doctest::Approx(1.0));
  CHECK(Shape::box(Vec::zero(2), Vec::of({1.0, 2.0})).diameter() ==
        doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK_THROWS_AS(Shape::ball(Vec::zero(1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::box(Vec::zero(2), Vec::of({1.0, 0.0})), std::invalid_argument);
}

TEST_CASE("intersection examples, tangency counts") {
  // d=1 footprints [-0.2,0.8] and [0.7,1.3]
  Shape a = Shape::ball(Vec::of({0.3}), 0.5);
  Shape b = Shape::ball(Vec::of({1.0}), 0.3);
  CHECK(intersects(a, b));
  // closed tangency [-0.2,0.8] and [0.8,1.2]
  Shape c = Shape::ball(Vec::of({1.0}), 0.2);
  CHECK(intersects(a, c));
  // d=2 balls at distance 3, radii 1 and 1
  CHECK_FALSE(intersects(Shape::ball(Vec::of({0.0, 0.0}), 1.0),
                         Shape::ball(Vec::of({3.0, 0.0}), 1.0)));
}

TEST_CASE("point membership") {
  CHECK(contains_point(Shape::ball(Vec::of({0.3}), 0.5), Vec::of({0.0})));
  Ground cone = Ground::make_cone(Vec::zero(2), Vec::of({1.0, 0.0}), std::acos(-1.0) / 4);
  CHECK(contains_point(cone, Vec::of({1.0, 1.0})));  // boundary
  CHECK_FALSE(contains_point(cone, Vec::of({-1.0, 0.0})));
  CHECK(contains_point(cone, Vec::zero(2)));  // apex
  Ground pts = Ground::origin(1);
  CHECK_FALSE(contains_point(pts, Vec::of({0.1})));
  CHECK(contains_point(pts, Vec::of({0.0})));
}

TEST_CASE("ray intersection examples") {
  Shape a = Shape::ball(Vec::of({0.3}), 0.5);  // [-0.2, 0.8]
  Interval i1 = ray_intersection(a, Vec::zero(1), Vec::of({1.0}));
  CHECK(i1.lo == doctest::Approx(0.0));
  CHECK(i1.hi == doctest::Approx(0.8));

  Shape far = Shape::ball(Vec::of({5.0}), 0.5);  // [4.5, 5.5] behind the origin
  CHECK(ray_intersection(far, Vec::zero(1), Vec::of({-1.0})).is_empty());

  Shape d2 = Shape::ball(Vec::of({2.0, 0.0}), 1.0);
  Interval i2 = ray_intersection(d2, Vec::zero(2), Vec::of({1.0, 0.0}));
  CHECK(i2.lo == doctest::Approx(1.0));
  CHECK(i2.hi == doctest::Approx(3.0));
}

TEST_CASE("support examples") {
  CHECK(support(Shape::ball(Vec::of({0.3}), 0.5), Vec::of({1.0})) == doctest::Approx(0.8));
  CHECK(support(Shape::ball(Vec::of({1.0, 1.0}), 2.0), Vec::of({1.0, 0.0})) ==
        doctest::Approx(3.0));
  CHECK(support(Shape::box(Vec::zero(2), Vec::of({1.0, 2.0})), Vec::of({0.0, 1.0})) ==
        doctest::Approx(2.0));
}

TEST_CASE("intersects is symmetric over random shape pairs") {
  RngStream rng(11);
  for (int i = 0; i < 4000; ++i) {
    int d = 1 + static_cast<int>(rng() % 3);
    Shape a = random_shape(rng, d), b = random_shape(rng, d);
    CHECK(intersects(a, b) == intersects(b, a));
  }
}

TEST_CASE("intersecting open overlaps contain a common grid point") {
  RngStream rng(12);
  for (int i = 0; i < 300; ++i) {
    int d = 1 + static_cast<int>(rng() % 2);
    Shape a = random_shape(rng, d);
    // Build b around an interior point of a: overlap is open, not tangent.
    Vec p = a.center;
    for (int j = 0; j < d; ++j) p[j] += uniform(rng, -0.4, 0.4) * a.extent(j);
    Vec bc = p;
    for (int j = 0; j < d; ++j) bc[j] += uniform(rng, -0.05, 0.05);
    Vec bhw(d);
    for (int j = 0; j < d; ++j) bhw[j] = 0.3;
    Shape b = (rng() & 1) ? Shape::ball(bc, uniform(rng, 0.2, 0.8)) : Shape::box(bc, bhw);
    REQUIRE(intersects(a, b));
    double step = std::min(a.diameter(), b.diameter()) / 1000.0;
    bool found = false;
    double lo0 = std::max(a.bbox_lo(0), b.bbox_lo(0)), hi0 = std::min(a.bbox_hi(0), b.bbox_hi(0));
    double lo1 = d > 1 ? std::max(a.bbox_lo(1), b.bbox_lo(1)) : 0;
    double hi1 = d > 1 ? std::min(a.bbox_hi(1), b.bbox_hi(1)) : 0;
    // Cap the scan so pathological sizes stay cheap.
    step = std::max(step, (hi0 - lo0) / 300.0);
    for (double x = lo0; x <= hi0 && !found; x += step) {
      if (d == 1) {
        Vec q = Vec::of({x});
        found = contains_point(a, q) && contains_point(b, q);
      } else {
        double step1 = std::max(step, (hi1 - lo1) / 300.0);
        for (double y = lo1; y <= hi1 && !found; y += step1) {
          Vec q = Vec::of({x, y});
          found = contains_point(a, q) && contains_point(b, q);
        }
      }
    }
    CHECK(found);
  }
}

TEST_CASE("ray intervals land inside the shape") {
  RngStream rng(13);
  for (int i = 0; i < 2000; ++i) {
    int d = 1 + static_cast<int>(rng() % 3);
    Shape s = random_shape(rng, d);
    Vec o(d);
    for (int j = 0; j < d; ++j) o[j] = uniform(rng, -3.0, 3.0);
    Vec u = random_unit_vec(rng, d);
    Interval iv = ray_intersection(s, o, u);
    if (iv.is_empty()) continue;
    for (double r : {iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi}) {
      Vec q = o + u * r;
      CHECK(distance_to_point(s, q) <= 1e-9);
    }
  }
}

TEST_CASE("support is Lipschitz in direction and additive under translation") {
  RngStream rng(14);
  for (int i = 0; i < 2000; ++i) {
    int d = 1 + static_cast<int>(rng() % 3);
    Shape s = random_shape(rng, d);
    Vec u = random_unit_vec(rng, d), v = random_unit_vec(rng, d);
    double reach = farthest_point_distance(s, s) / 2 + s.center.norm();
    CHECK(std::abs(support(s, u) - support(s, v)) <= reach * dist(u, v) + 1e-9);
    Vec t(d);
    for (int j = 0; j < d; ++j) t[j] = uniform(rng, -2.0, 2.0);
    CHECK(support(s.translated(t), u) == doctest::Approx(support(s, u) + t.dot(u)).epsilon(1e-9));
  }
}

TEST_CASE("cone with half-angle pi/2 equals the half-space through its apex") {
  RngStream rng(15);
  for (int i = 0; i < 500; ++i) {
    int d = 1 + static_cast<int>(rng() % 3);
    Vec apex(d), axis = random_unit_vec(rng, d);
    for (int j = 0; j < d; ++j) apex[j] = uniform(rng, -1.0, 1.0);
    Ground cone = Ground::make_cone(apex, axis, std::acos(-1.0) / 2);
    Ground hs = Ground::half_space(axis, apex.dot(axis));
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = uniform(rng, -3.0, 3.0);
    CHECK(contains_point(cone, x) == contains_point(hs, x));
    Shape s = random_shape(rng, d);
    CHECK(intersects(cone, s) == intersects(hs, s));
  }
}

TEST_CASE("cone membership agrees with the cone-shape intersection tests") {
  // Sampling can only certify the positive direction: a shape containing a
  // cone point must intersect the cone.
  RngStream rng(16);
  for (int i = 0; i < 1500; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    Vec apex(d);
    for (int j = 0; j < d; ++j) apex[j] = uniform(rng, -1.0, 1.0);
    ConeSpec cone{apex, random_unit_vec(rng, d), uniform(rng, 0.2, std::acos(-1.0) / 2)};
    Shape s = random_shape(rng, d, 3.0);
    bool sampled_hit = false;
    for (int k = 0; k < 60 && !sampled_hit; ++k) {
      Vec q = s.center;
      for (int j = 0; j < d; ++j) q[j] += uniform(rng, -1.0, 1.0) * s.extent(j);
      if (contains_point(s, q) && cone_contains(cone, q)) sampled_hit = true;
    }
    if (sampled_hit) CHECK(cone_intersects(cone, s));
    if (!cone_intersects(cone, s)) {
      // Distance-positive balls must really be separated.
      if (s.kind == ShapeKind::Ball) CHECK(cone_distance(cone, s.center) > s.radius);
    }
  }
}

TEST_CASE("narrow cone piercing a box face without touching edges is detected") {
  ConeSpec cone{Vec::of({0.0, 0.0, -5.0}), Vec::of({0.0, 0.0, 1.0}), 0.1};
  Shape box = Shape::box(Vec::zero(3), Vec::of({4.0, 4.0, 0.5}));
  CHECK(cone_intersects(cone, box));
  // And a clearly separated box on the side.
  Shape off = Shape::box(Vec::of({3.0, 3.0, 0.0}), Vec::of({0.5, 0.5, 0.5}));
  CHECK_FALSE(cone_intersects(cone, off));
}

TEST_CASE("margin to the window boundary") {
  Shape s = Shape::ball(Vec::of({5.0}), 0.5);  // [4.5, 5.5] in [-6, 6]
  CHECK(margin_to_box_boundary(s, Vec::zero(1), Vec::of({6.0})) == doctest::Approx(0.5));
  Shape t = Shape::ball(Vec::of({0.55}), 0.75);  // [-0.2, 1.3]
  CHECK(margin_to_box_boundary(t, Vec::zero(1), Vec::of({6.0})) == doctest::Approx(4.7));
}
