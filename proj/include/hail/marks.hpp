#pragma once

// Distributions of the i.i.d. stone marks (footprint shape, height), with the
// family-analytic light-tail validation: E exp(c*diam^d) and E exp(c*sigma)
// must be finite for some c > 0. The check is closed-form per family; sampling
// cannot certify existence of exponential moments.

#include <optional>
#include <string>

#include "hail/geometry.hpp"
#include "hail/rng.hpp"

namespace hail {

enum class DistFamily { Constant, Uniform, Exponential, TruncatedExponential };

struct Dist {
  DistFamily family = DistFamily::Constant;
  double value = 1.0;  // Constant
  double lo = 0, hi = 0;  // Uniform
  double rate = 1.0;      // Exponential / TruncatedExponential
  double cap = 0;         // TruncatedExponential

  static Dist constant(double v);
  static Dist uniform(double lo, double hi);
  static Dist exponential(double rate);
  static Dist truncated_exponential(double rate, double cap);

  double sample(RngStream& rng) const;
  double mean() const;
  double variance() const;
  double quantile(double q) const;
  bool bounded() const { return family != DistFamily::Exponential; }
  double upper_bound() const;  // +inf for Exponential
};

enum class ShapeFamily { FixedBall, BallRadiusDist, FixedBox, BoxHalfWidthDist };
enum class HeightKind { Fixed, FromDist, CoupledToDiameter };

struct MarkSpec {
  ShapeFamily shape_family = ShapeFamily::FixedBall;
  double ball_radius = 0.5;          // FixedBall
  Vec box_half_widths;               // FixedBox
  Dist shape_dist;                   // BallRadiusDist / BoxHalfWidthDist (per-axis i.i.d.)
  HeightKind height_kind = HeightKind::Fixed;
  double height_value = 1.0;         // Fixed
  Dist height_dist;                  // FromDist

  static MarkSpec fixed_ball(double radius, double sigma);
  static MarkSpec fixed_ball_coupled(double radius);
};

struct Mark {
  Shape shape;   // centered at the origin
  double sigma;  // height, > 0
};

struct LightTailReport {
  bool ok = true;
  std::string violation;  // names the offending exponential moment when !ok
};

LightTailReport validate_light_tail(const MarkSpec& spec, int d);

// Throws std::invalid_argument when the light-tail check fails.
void require_light_tail(const MarkSpec& spec, int d);

Mark sample_mark(RngStream& rng, const MarkSpec& spec, int d);

// Quantile of the induced footprint-diameter distribution (upper bound for
// boxes with i.i.d. half-widths); used to size the truncation radius R_cut.
double diameter_quantile(const MarkSpec& spec, int d, double q);

// Smallest inradius the spec can produce (used for cover-grid pitch).
double min_inradius(const MarkSpec& spec, int d);

}  // namespace hail
