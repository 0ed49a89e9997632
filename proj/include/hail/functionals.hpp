#pragma once

// Shape observables over a finished heap: maximal height within a convex set
// of space-height directions, set-gauge distances of the footprint union,
// footprint diameter, and cover times from the event log. All evaluations are
// closed-form per stone; the observables are maxima of per-stone quantities.

#include <optional>
#include <string>
#include <vector>

#include "hail/heap.hpp"

namespace hail {

enum class ThetaKind { NorthPole, RayDirection, VerticalCap, SpatialCone };

// Closed convex subset of the upper unit hemisphere (spatial x height
// directions). The maximal-height functional is always >= 0: the defining set
// of heights contains h = 0.
struct ThetaSpec {
  ThetaKind kind = ThetaKind::NorthPole;
  Vec w;               // RayDirection: spatial unit vector
  double phi = 0.0;    // RayDirection: elevation in (0, pi/2]; pi/2 is vertical
  double alpha = 0.0;  // VerticalCap: cap half-angle in (0, pi/2]
  ConeSpec cone{};     // SpatialCone

  static ThetaSpec north_pole();
  static ThetaSpec ray(const Vec& w, double phi);
  static ThetaSpec cap(double alpha);
  static ThetaSpec spatial_cone(const ConeSpec& cone);
};

enum class GaugeKind { Point, HalfSpace, Ray };

// Set-gauge (v, A): A + a subset of A for all a in A, and -v outside conv(A).
struct GaugeSpec {
  GaugeKind kind = GaugeKind::Point;
  Vec v;  // unit direction
  Vec w;  // HalfSpace: A = {x . w >= 0}; requires v . w > 0

  static GaugeSpec point(const Vec& v);
  static GaugeSpec half_space(const Vec& w, const Vec& v);
  static GaugeSpec ray(const Vec& v);
};

double max_height(const HeapState& state, const ThetaSpec& theta);
double gauge_distance(const HeapState& state, const GaugeSpec& gauge);

// Exact sup pairwise distance over the union of placed footprints (0 if none).
double footprint_diameter(const HeapState& state);

// Earliest event time at which every point of K lies in some placed footprint;
// +inf when not covered by the horizon (censored). Empty K covers at 0.
double cover_time(const HeapState& state, const std::vector<Vec>& K);

// Test points for a region target: an eps-grid over the shape.
std::vector<Vec> cover_grid(const Shape& region, double eps);

// A functional addressable by a string key, e.g. "north_pole",
// "ray:w=1;phi=0.7854", "cap:alpha=0.5", "cone:apex=0;axis=1;alpha=0.5",
// "gauge:point:v=1", "gauge:halfspace:w=1", "gauge:ray:v=1",
// "height_at:x=1.5" (max(0, H(x)) at a fixed probe point).
struct FunctionalSpec {
  enum class Kind { Theta, Gauge, PointHeight } kind = Kind::Theta;
  ThetaSpec theta;
  GaugeSpec gauge;
  Vec probe;  // PointHeight
  std::string key;

  double evaluate(const HeapState& state) const;
};

std::string height_at_key(const Vec& x);

FunctionalSpec parse_functional(const std::string& key, int d);

}  // namespace hail
