#include "hail/geometry.hpp"

#include <algorithm>

namespace hail {

namespace {

// Largest |a-b| between a point of a ball/box and a fixed point x.
double farthest_from_point(const Shape& s, const Vec& x) {
  if (s.kind == ShapeKind::Ball) return dist(s.center, x) + s.radius;
  double sum = 0;
  for (int i = 0; i < s.dim(); ++i) {
    double lo = std::abs(s.bbox_lo(i) - x[i]);
    double hi = std::abs(s.bbox_hi(i) - x[i]);
    double m = std::max(lo, hi);
    sum += m * m;
  }
  return std::sqrt(sum);
}

// Corners of a box shape (2^d of them).
std::vector<Vec> box_corners(const Shape& s) {
  int d = s.dim();
  std::vector<Vec> out;
  out.reserve(std::size_t(1) << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec p = s.center;
    for (int i = 0; i < d; ++i) p[i] += (mask & (1 << i)) ? s.half_widths[i] : -s.half_widths[i];
    out.push_back(p);
  }
  return out;
}

// Edges of a box shape as (corner, corner) pairs.
std::vector<std::pair<Vec, Vec>> box_edges(const Shape& s) {
  int d = s.dim();
  std::vector<std::pair<Vec, Vec>> out;
  auto corners = box_corners(s);
  for (std::size_t a = 0; a < corners.size(); ++a)
    for (int i = 0; i < d; ++i) {
      std::size_t b = a | (std::size_t(1) << i);
      if (b != a) out.emplace_back(corners[a], corners[b]);
    }
  return out;
}

bool point_in_box(const Vec& x, const Vec& center, const Vec& hw) {
  for (int i = 0; i < x.d; ++i)
    if (std::abs(x[i] - center[i]) > hw[i] + kTol) return false;
  return true;
}

// Does the segment p0..p1 meet the ray apex + t*u, t >= 0? (d = 2 only)
bool segment_hits_ray_2d(const Vec& p0, const Vec& p1, const Vec& apex, const Vec& u) {
  const Vec e = p1 - p0;
  const Vec w = p0 - apex;
  const double cross_eu = e[0] * u[1] - e[1] * u[0];
  const double cross_wu = w[0] * u[1] - w[1] * u[0];
  const double cross_we = w[0] * e[1] - w[1] * e[0];
  if (std::abs(cross_eu) < kTol) {
    // Parallel. Collinear overlap counts as contact.
    if (std::abs(cross_wu) > kTol) return false;
    double t0 = w.dot(u), t1 = (p1 - apex).dot(u);
    return std::max(t0, t1) >= -kTol;
  }
  double s = -cross_wu / cross_eu;           // position along the segment
  double t = -cross_we / cross_eu;           // position along the ray
  return s >= -kTol && s <= 1 + kTol && t >= -kTol;
}

// Does the segment p0..p1 meet the cone? Exact: restrict the cone's quadratic
// to the segment and maximize over the half where (y . axis) >= 0.
bool segment_hits_cone(const Vec& p0, const Vec& p1, const ConeSpec& c) {
  const double ca = std::cos(c.half_angle);
  const Vec e = p1 - p0;
  const Vec y0 = p0 - c.apex;
  const double f0 = y0.dot(c.axis), fe = e.dot(c.axis);
  // Feasible s-range within [0,1] where y(s) . axis >= 0.
  double slo = 0, shi = 1;
  if (std::abs(fe) < kTol) {
    if (f0 < -kTol) return false;
  } else {
    double root = -f0 / fe;
    if (fe > 0)
      slo = std::max(slo, root);
    else
      shi = std::min(shi, root);
    if (slo > shi) return false;
  }
  // Q(s) = (y.axis)^2 - cos^2 * |y|^2, maximized over [slo, shi].
  const double A = fe * fe - ca * ca * e.norm2();
  const double B = 2 * (f0 * fe - ca * ca * y0.dot(e));
  const double C = f0 * f0 - ca * ca * y0.norm2();
  auto q = [&](double s) { return (A * s + B) * s + C; };
  double best = std::max(q(slo), q(shi));
  if (A < 0) {
    double sv = -B / (2 * A);
    if (sv > slo && sv < shi) best = std::max(best, q(sv));
  }
  double scale = 1.0 + y0.norm2() + e.norm2();
  return best >= -kTol * scale;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
  if (r.is_empty()) return Interval::empty();
  return r;
}

}  // namespace

// --- shape predicates ----------------------------------------------------------

bool contains_point(const Shape& s, const Vec& x) {
  if (s.kind == ShapeKind::Ball) return dist(s.center, x) <= s.radius + kTol;
  return point_in_box(x, s.center, s.half_widths);
}

bool intersects(const Shape& a, const Shape& b) {
  if (a.kind == ShapeKind::Ball && b.kind == ShapeKind::Ball)
    return dist(a.center, b.center) <= a.radius + b.radius + kTol;
  if (a.kind == ShapeKind::Box && b.kind == ShapeKind::Box) {
    for (int i = 0; i < a.dim(); ++i)
      if (std::abs(a.center[i] - b.center[i]) > a.half_widths[i] + b.half_widths[i] + kTol)
        return false;
    return true;
  }
  const Shape& ball = a.kind == ShapeKind::Ball ? a : b;
  const Shape& box = a.kind == ShapeKind::Ball ? b : a;
  return distance_to_point(box, ball.center) <= ball.radius + kTol;
}

Interval ray_intersection(const Shape& s, const Vec& origin, const Vec& dir) {
  if (s.kind == ShapeKind::Ball) {
    const Vec oc = s.center - origin;
    const double m = oc.dot(dir);
    const double disc = m * m - (oc.norm2() - s.radius * s.radius);
    if (disc < 0) return Interval::empty();
    const double sq = std::sqrt(disc);
    double lo = m - sq, hi = m + sq;
    if (hi < 0) return Interval::empty();
    return Interval(std::max(lo, 0.0), hi);
  }
  double lo = 0, hi = kInf;
  for (int i = 0; i < s.dim(); ++i) {
    const double o = origin[i], u = dir[i];
    const double a = s.bbox_lo(i), b = s.bbox_hi(i);
    if (std::abs(u) < kTol) {
      if (o < a - kTol || o > b + kTol) return Interval::empty();
      continue;
    }
    double t1 = (a - o) / u, t2 = (b - o) / u;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }
  if (lo > hi + kTol) return Interval::empty();
  return Interval(lo, std::max(hi, lo));
}

double support(const Shape& s, const Vec& dir) {
  if (s.kind == ShapeKind::Ball) return s.center.dot(dir) + s.radius;
  double v = s.center.dot(dir);
  for (int i = 0; i < s.dim(); ++i) v += s.half_widths[i] * std::abs(dir[i]);
  return v;
}

double distance_to_point(const Shape& s, const Vec& x) {
  if (s.kind == ShapeKind::Ball) return std::max(0.0, dist(s.center, x) - s.radius);
  double sum = 0;
  for (int i = 0; i < s.dim(); ++i) {
    double gap = std::abs(x[i] - s.center[i]) - s.half_widths[i];
    if (gap > 0) sum += gap * gap;
  }
  return std::sqrt(sum);
}

double farthest_point_distance(const Shape& a, const Shape& b) {
  if (a.kind == ShapeKind::Ball) return farthest_from_point(b, a.center) + a.radius;
  if (b.kind == ShapeKind::Ball) return farthest_from_point(a, b.center) + b.radius;
  double best = 0;
  for (const Vec& p : box_corners(a)) best = std::max(best, farthest_from_point(b, p));
  return best;
}

// --- cone ----------------------------------------------------------------------

bool cone_contains(const ConeSpec& c, const Vec& x) {
  const Vec y = x - c.apex;
  const double n = y.norm();
  if (n <= kTol) return true;  // apex
  return y.dot(c.axis) >= n * std::cos(c.half_angle) - kTol;
}

double cone_distance(const ConeSpec& c, const Vec& x) {
  const Vec y = x - c.apex;
  const double n2 = y.norm2();
  if (n2 <= kTol * kTol) return 0.0;
  const double a = y.dot(c.axis);
  const double n = std::sqrt(n2);
  const double ca = std::cos(c.half_angle), sa = std::sin(c.half_angle);
  if (a >= n * ca) return 0.0;  // inside
  const double b = std::sqrt(std::max(n2 - a * a, 0.0));  // radial part
  const double proj = a * ca + b * sa;                    // onto the boundary ray
  if (proj <= 0) return n;                                // apex is closest
  return std::sqrt(std::max(n2 - proj * proj, 0.0));
}

bool cone_intersects(const ConeSpec& c, const Shape& s) {
  const double half_pi = std::acos(-1.0) / 2;
  if (s.kind == ShapeKind::Ball) return cone_distance(c, s.center) <= s.radius + kTol;
  // Box footprint.
  if (s.dim() == 1 || c.half_angle >= half_pi - kTol) {
    // Half-line / half-space: support test.
    double off = c.apex.dot(c.axis);
    return support(s, c.axis) >= off - kTol;
  }
  if (point_in_box(c.apex, s.center, s.half_widths)) return true;
  for (const Vec& p : box_corners(s))
    if (cone_contains(c, p)) return true;
  if (s.dim() == 2) {
    // Boundary rays of the wedge; any crossing with a box edge is contact.
    const double ca = std::cos(c.half_angle), sa = std::sin(c.half_angle);
    for (double sgn : {1.0, -1.0}) {
      Vec u(2);
      u[0] = ca * c.axis[0] - sgn * sa * c.axis[1];
      u[1] = sgn * sa * c.axis[0] + ca * c.axis[1];
      for (const auto& [p0, p1] : box_edges(s))
        if (segment_hits_ray_2d(p0, p1, c.apex, u)) return true;
    }
    return false;
  }
  // d = 3: edge-vs-surface crossings, then the cone piercing a face interior
  // (in which case the axis ray passes through the box).
  for (const auto& [p0, p1] : box_edges(s))
    if (segment_hits_cone(p0, p1, c)) return true;
  Interval along = ray_intersection(s, c.apex, c.axis);
  return !along.is_empty();
}

// --- ground --------------------------------------------------------------------

bool contains_point(const Ground& g, const Vec& x) {
  switch (g.kind) {
    case GroundKind::PointSet:
      for (const Vec& p : g.points)
        if (dist(p, x) <= kTol) return true;
      return false;
    case GroundKind::Ball:
    case GroundKind::Box:
      return contains_point(g.shape, x);
    case GroundKind::Cone:
      return cone_contains(g.cone, x);
    case GroundKind::HalfSpace:
      return x.dot(g.normal) >= g.offset - kTol;
    case GroundKind::FullSpace:
      return true;
  }
  return false;
}

bool intersects(const Ground& g, const Shape& s) {
  switch (g.kind) {
    case GroundKind::PointSet:
      for (const Vec& p : g.points)
        if (contains_point(s, p)) return true;
      return false;
    case GroundKind::Ball:
    case GroundKind::Box:
      return intersects(g.shape, s);
    case GroundKind::Cone:
      return cone_intersects(g.cone, s);
    case GroundKind::HalfSpace:
      return support(s, g.normal) >= g.offset - kTol;
    case GroundKind::FullSpace:
      return true;
  }
  return false;
}

std::vector<Interval> ray_intersections(const Ground& g, const Vec& origin, const Vec& dir) {
  std::vector<Interval> out;
  switch (g.kind) {
    case GroundKind::PointSet:
      for (const Vec& p : g.points) {
        double r = (p - origin).dot(dir);
        if (r < -kTol) continue;
        r = std::max(r, 0.0);
        if (dist(origin + dir * r, p) <= kTol) out.emplace_back(r, r);
      }
      break;
    case GroundKind::Ball:
    case GroundKind::Box: {
      Interval iv = ray_intersection(g.shape, origin, dir);
      if (!iv.is_empty()) out.push_back(iv);
      break;
    }
    case GroundKind::HalfSpace: {
      const double f0 = origin.dot(g.normal) - g.offset;
      const double fe = dir.dot(g.normal);
      if (std::abs(fe) < kTol) {
        if (f0 >= -kTol) out.emplace_back(0.0, kInf);
      } else {
        double root = -f0 / fe;
        Interval iv = fe > 0 ? Interval(std::max(root, 0.0), kInf) : Interval(0.0, root);
        if (!iv.is_empty()) out.push_back(iv);
      }
      break;
    }
    case GroundKind::Cone: {
      const double half_pi = std::acos(-1.0) / 2;
      if (g.cone.half_angle >= half_pi - kTol) {
        Ground hs = Ground::half_space(g.cone.axis, g.cone.apex.dot(g.cone.axis));
        return ray_intersections(hs, origin, dir);
      }
      const double ca = std::cos(g.cone.half_angle);
      const Vec y0 = origin - g.cone.apex;
      const double f0 = y0.dot(g.cone.axis), fe = dir.dot(g.cone.axis);
      // Linear feasibility y(r) . axis >= 0, over r >= 0.
      Interval lin(0.0, kInf);
      if (std::abs(fe) < kTol) {
        if (f0 < -kTol) return out;
      } else {
        double root = -f0 / fe;
        lin = fe > 0 ? Interval(std::max(root, 0.0), kInf) : Interval(0.0, root);
        if (lin.is_empty()) return out;
      }
      // Quadratic (y.axis)^2 - cos^2 |y|^2 >= 0.
      const double A = fe * fe - ca * ca;  // |dir| = 1
      const double B = 2 * (f0 * fe - ca * ca * y0.dot(dir));
      const double C = f0 * f0 - ca * ca * y0.norm2();
      std::vector<Interval> quad;
      if (std::abs(A) < kTol) {
        if (std::abs(B) < kTol) {
          if (C >= -kTol) quad.emplace_back(0.0, kInf);
        } else {
          double root = -C / B;
          quad.push_back(B > 0 ? Interval(std::max(root, 0.0), kInf) : Interval(0.0, root));
        }
      } else {
        double disc = B * B - 4 * A * C;
        if (disc < 0) {
          if (A > 0) quad.emplace_back(0.0, kInf);
        } else {
          double sq = std::sqrt(disc);
          double r1 = (-B - sq) / (2 * A), r2 = (-B + sq) / (2 * A);
          if (r1 > r2) std::swap(r1, r2);
          if (A > 0) {
            quad.emplace_back(0.0, r1);
            quad.emplace_back(std::max(r2, 0.0), kInf);
          } else {
            quad.emplace_back(std::max(r1, 0.0), r2);
          }
        }
      }
      for (const Interval& q : quad) {
        Interval iv = intersect(q, lin);
        if (!iv.is_empty()) out.push_back(iv);
      }
      break;
    }
    case GroundKind::FullSpace:
      out.emplace_back(0.0, kInf);
      break;
  }
  return out;
}

double support(const Ground& g, const Vec& dir) {
  switch (g.kind) {
    case GroundKind::PointSet: {
      double best = -kInf;
      for (const Vec& p : g.points) best = std::max(best, p.dot(dir));
      return best;
    }
    case GroundKind::Ball:
    case GroundKind::Box:
      return support(g.shape, dir);
    case GroundKind::Cone: {
      // Finite iff every cone direction has nonpositive component along dir.
      double cosw = g.cone.axis.dot(dir) / dir.norm();
      double angle = std::acos(std::clamp(cosw, -1.0, 1.0));
      if (angle - g.cone.half_angle >= std::acos(-1.0) / 2 - kTol) return g.cone.apex.dot(dir);
      return kInf;
    }
    case GroundKind::HalfSpace: {
      // Bounded only along -normal.
      Vec u = dir.normalized();
      if (dist(u, -g.normal) <= kTol) return -g.offset * dir.norm();
      return kInf;
    }
    case GroundKind::FullSpace:
      return kInf;
  }
  return -kInf;
}

double extent_diameter(const Ground& g) {
  switch (g.kind) {
    case GroundKind::PointSet: {
      double best = 0;
      for (std::size_t i = 0; i < g.points.size(); ++i)
        for (std::size_t j = i + 1; j < g.points.size(); ++j)
          best = std::max(best, dist(g.points[i], g.points[j]));
      return best;
    }
    case GroundKind::Ball:
    case GroundKind::Box:
      return g.shape.diameter();
    default:
      return kInf;
  }
}

double margin_to_box_boundary(const Shape& s, const Vec& box_center, const Vec& box_half_widths) {
  double m = kInf;
  for (int i = 0; i < s.dim(); ++i) {
    double room = box_half_widths[i] - std::abs(s.center[i] - box_center[i]) - s.extent(i);
    m = std::min(m, room);
  }
  return m;
}

}  // namespace hail
