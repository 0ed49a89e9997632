#pragma once

// Shapes for stone footprints and grounds in R^d (d = 1..3), with the exact
// closed-set predicates the stacking dynamics and the shape functionals need.
// All comparisons use an absolute tolerance so that tangency counts as contact.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hail {

inline constexpr double kTol = 1e-12;
inline constexpr int kMaxDim = 3;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Point / vector in R^d with runtime dimension.
struct Vec {
  std::array<double, kMaxDim> c{0.0, 0.0, 0.0};
  int d = 1;

  Vec() = default;
  explicit Vec(int dim) : d(dim) { check_dim(dim); }
  Vec(int dim, std::initializer_list<double> xs) : d(dim) {
    check_dim(dim);
    int i = 0;
    for (double x : xs) {
      if (i >= dim) throw std::invalid_argument("Vec: too many components");
      c[i++] = x;
    }
  }

  static void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: dimension must be in [1,3]");
  }
  static Vec zero(int dim) { return Vec(dim); }
  static Vec of(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v.c[i++] = x;
    return v;
  }
  static Vec axis_unit(int dim, int axis) {
    Vec v(dim);
    v.c[axis] = 1.0;
    return v;
  }

  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  Vec operator+(const Vec& o) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r.c[i] = c[i] * s;
    return r;
  }
  Vec operator-() const { return *this * -1.0; }

  double dot(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < d; ++i) s += c[i] * o.c[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  Vec normalized() const {
    double n = norm();
    if (n < kTol) throw std::invalid_argument("Vec: cannot normalize near-zero vector");
    return *this * (1.0 / n);
  }

  bool operator==(const Vec& o) const { return d == o.d && c == o.c; }

  // Lexicographic order, used as the deterministic tie-breaker for equal times.
  bool lex_less(const Vec& o) const {
    for (int i = 0; i < d; ++i) {
      if (c[i] < o.c[i]) return true;
      if (c[i] > o.c[i]) return false;
    }
    return false;
  }
};

inline double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

// Closed interval of ray parameters; empty when hi < lo.
struct Interval {
  double lo = kInf;
  double hi = -kInf;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {}
  static Interval empty() { return Interval(); }
  bool is_empty() const { return !(lo <= hi); }
};

enum class ShapeKind { Ball, Box };

// A footprint: Ball or Box at a position in R^d. Marks carry shapes centered
// at the origin; an arrival's footprint is the mark shape translated to the
// arrival position.
struct Shape {
  ShapeKind kind = ShapeKind::Ball;
  Vec center;
  double radius = 0.0;  // Ball
  Vec half_widths;      // Box

  static Shape ball(const Vec& center, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("Shape: ball radius must be > 0");
    Shape s;
    s.kind = ShapeKind::Ball;
    s.center = center;
    s.radius = radius;
    s.half_widths = Vec::zero(center.d);
    return s;
  }
  static Shape box(const Vec& center, const Vec& half_widths) {
    if (center.d != half_widths.d) throw std::invalid_argument("Shape: box dimension mismatch");
    for (int i = 0; i < half_widths.d; ++i)
      if (!(half_widths[i] > 0)) throw std::invalid_argument("Shape: box half-widths must be > 0");
    Shape s;
    s.kind = ShapeKind::Box;
    s.center = center;
    s.half_widths = half_widths;
    return s;
  }

  int dim() const { return center.d; }

  Shape translated(const Vec& by) const {
    Shape s = *this;
    s.center = center + by;
    return s;
  }

  double diameter() const {
    if (kind == ShapeKind::Ball) return 2.0 * radius;
    return 2.0 * half_widths.norm();
  }

  // Per-axis extent, i.e. the half-width of the axis-aligned bounding box.
  double extent(int axis) const { return kind == ShapeKind::Ball ? radius : half_widths[axis]; }
  double bbox_lo(int axis) const { return center[axis] - extent(axis); }
  double bbox_hi(int axis) const { return center[axis] + extent(axis); }
};

bool contains_point(const Shape& s, const Vec& x);
bool intersects(const Shape& a, const Shape& b);

// {r >= 0 : origin + r*dir in s}, Empty if the shape is missed or lies behind.
Interval ray_intersection(const Shape& s, const Vec& origin, const Vec& dir);

// max over the shape of x . dir
double support(const Shape& s, const Vec& dir);

// Euclidean distance from x to the shape (0 inside).
double distance_to_point(const Shape& s, const Vec& x);

// sup over a in `a`, b in `b` of |a-b|; with a == b this is the diameter.
double farthest_point_distance(const Shape& a, const Shape& b);

// --- grounds -----------------------------------------------------------------

struct ConeSpec {
  Vec apex;
  Vec axis;           // unit
  double half_angle;  // (0, pi/2]
};

enum class GroundKind { PointSet, Ball, Box, Cone, HalfSpace, FullSpace };

// The zero-service-speed substrate. Closed membership; a cone with
// half_angle = pi/2 coincides with the half-space through its apex.
struct Ground {
  GroundKind kind = GroundKind::PointSet;
  int d = 1;
  std::vector<Vec> points;  // PointSet
  Shape shape;              // Ball / Box carrier
  ConeSpec cone{};          // Cone
  Vec normal;               // HalfSpace
  double offset = 0.0;      // HalfSpace

  static Ground point_set(std::vector<Vec> pts) {
    if (pts.empty()) throw std::invalid_argument("Ground: point set must be non-empty");
    Ground g;
    g.kind = GroundKind::PointSet;
    g.d = pts.front().d;
    for (const auto& p : pts)
      if (p.d != g.d) throw std::invalid_argument("Ground: point dimension mismatch");
    g.points = std::move(pts);
    return g;
  }
  static Ground origin(int dim) { return point_set({Vec::zero(dim)}); }
  static Ground ball(const Vec& center, double radius) {
    Ground g;
    g.kind = GroundKind::Ball;
    g.d = center.d;
    g.shape = Shape::ball(center, radius);
    return g;
  }
  static Ground box(const Vec& center, const Vec& half_widths) {
    Ground g;
    g.kind = GroundKind::Box;
    g.d = center.d;
    g.shape = Shape::box(center, half_widths);
    return g;
  }
  static Ground make_cone(const Vec& apex, const Vec& axis, double half_angle) {
    if (!(half_angle > 0) || half_angle > std::acos(-1.0) / 2 + kTol)
      throw std::invalid_argument("Ground: cone half-angle must be in (0, pi/2]");
    Ground g;
    g.kind = GroundKind::Cone;
    g.d = apex.d;
    g.cone = ConeSpec{apex, axis.normalized(), half_angle};
    return g;
  }
  static Ground half_space(const Vec& normal, double offset) {
    Ground g;
    g.kind = GroundKind::HalfSpace;
    g.d = normal.d;
    g.normal = normal.normalized();
    g.offset = offset;
    return g;
  }
  static Ground full_space(int dim) {
    Ground g;
    g.kind = GroundKind::FullSpace;
    g.d = dim;
    return g;
  }

  bool is_bounded() const {
    return kind == GroundKind::PointSet || kind == GroundKind::Ball || kind == GroundKind::Box;
  }
};

bool contains_point(const Ground& g, const Vec& x);
bool intersects(const Ground& g, const Shape& s);

// All r >= 0 with origin + r*dir in the ground; a PointSet yields degenerate
// intervals, unbounded grounds may yield intervals with hi = +inf.
std::vector<Interval> ray_intersections(const Ground& g, const Vec& origin, const Vec& dir);

// sup over the ground of x . dir; +inf when unbounded in that direction.
double support(const Ground& g, const Vec& dir);

// Diameter of the ground set; +inf for cones, half-spaces and full space.
double extent_diameter(const Ground& g);

// Cone helpers (exact for circular cones, any d <= 3).
bool cone_contains(const ConeSpec& c, const Vec& x);
double cone_distance(const ConeSpec& c, const Vec& x);
bool cone_intersects(const ConeSpec& c, const Shape& s);

// Signed distance from the shape to the boundary of the axis-aligned box
// {|x_i - box_center_i| <= box_half_widths_i}; negative if the shape pokes out.
double margin_to_box_boundary(const Shape& s, const Vec& box_center, const Vec& box_half_widths);

}  // namespace hail
