#include "hail/marks.hpp"

#include <cmath>
#include <stdexcept>

namespace hail {

Dist Dist::constant(double v) {
  if (!(v > 0)) throw std::invalid_argument("Dist: constant must be > 0");
  Dist d;
  d.family = DistFamily::Constant;
  d.value = v;
  return d;
}

Dist Dist::uniform(double lo, double hi) {
  if (!(lo > 0) || !(lo <= hi)) throw std::invalid_argument("Dist: uniform requires 0 < lo <= hi");
  Dist d;
  d.family = DistFamily::Uniform;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Dist Dist::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("Dist: exponential rate must be > 0");
  Dist d;
  d.family = DistFamily::Exponential;
  d.rate = rate;
  return d;
}

Dist Dist::truncated_exponential(double rate, double cap) {
  if (!(rate > 0) || !(cap > 0))
    throw std::invalid_argument("Dist: truncated exponential requires rate > 0 and cap > 0");
  Dist d;
  d.family = DistFamily::TruncatedExponential;
  d.rate = rate;
  d.cap = cap;
  return d;
}

double Dist::sample(RngStream& rng) const {
  switch (family) {
    case DistFamily::Constant:
      return value;
    case DistFamily::Uniform:
      return hail::uniform(rng, lo, hi);
    case DistFamily::Exponential:
      return hail::exponential(rng, rate);
    case DistFamily::TruncatedExponential: {
      // Inverse CDF of the law conditioned on [0, cap].
      double u = uniform01(rng);
      double x = -std::log1p(-u * (1.0 - std::exp(-rate * cap))) / rate;
      return std::min(std::max(x, 5e-324), cap);
    }
  }
  return value;
}

double Dist::mean() const {
  switch (family) {
    case DistFamily::Constant:
      return value;
    case DistFamily::Uniform:
      return 0.5 * (lo + hi);
    case DistFamily::Exponential:
      return 1.0 / rate;
    case DistFamily::TruncatedExponential: {
      double z = 1.0 - std::exp(-rate * cap);
      return 1.0 / rate - cap * std::exp(-rate * cap) / z;
    }
  }
  return value;
}

double Dist::variance() const {
  switch (family) {
    case DistFamily::Constant:
      return 0.0;
    case DistFamily::Uniform:
      return (hi - lo) * (hi - lo) / 12.0;
    case DistFamily::Exponential:
      return 1.0 / (rate * rate);
    case DistFamily::TruncatedExponential: {
      // E X^2 = (2/r^2 - e^{-rc}(c^2 + 2c/r + 2/r^2)) / z
      double z = 1.0 - std::exp(-rate * cap);
      double e = std::exp(-rate * cap);
      double m2 = (2.0 / (rate * rate) - e * (cap * cap + 2 * cap / rate + 2 / (rate * rate))) / z;
      double m = mean();
      return m2 - m * m;
    }
  }
  return 0.0;
}

double Dist::quantile(double q) const {
  switch (family) {
    case DistFamily::Constant:
      return value;
    case DistFamily::Uniform:
      return lo + q * (hi - lo);
    case DistFamily::Exponential:
      return -std::log1p(-q) / rate;
    case DistFamily::TruncatedExponential: {
      double z = 1.0 - std::exp(-rate * cap);
      return -std::log1p(-q * z) / rate;
    }
  }
  return value;
}

double Dist::upper_bound() const {
  switch (family) {
    case DistFamily::Constant:
      return value;
    case DistFamily::Uniform:
      return hi;
    case DistFamily::Exponential:
      return kInf;
    case DistFamily::TruncatedExponential:
      return cap;
  }
  return value;
}

MarkSpec MarkSpec::fixed_ball(double radius, double sigma) {
  MarkSpec s;
  s.shape_family = ShapeFamily::FixedBall;
  s.ball_radius = radius;
  s.height_kind = HeightKind::Fixed;
  s.height_value = sigma;
  return s;
}

MarkSpec MarkSpec::fixed_ball_coupled(double radius) {
  MarkSpec s;
  s.shape_family = ShapeFamily::FixedBall;
  s.ball_radius = radius;
  s.height_kind = HeightKind::CoupledToDiameter;
  return s;
}

LightTailReport validate_light_tail(const MarkSpec& spec, int d) {
  Vec::check_dim(d);
  // Diameter side: bounded families always pass; an exponential tail on the
  // radius (or half-widths) keeps E exp(c*diam^d) finite only in d = 1.
  bool shape_exponential =
      (spec.shape_family == ShapeFamily::BallRadiusDist ||
       spec.shape_family == ShapeFamily::BoxHalfWidthDist) &&
      spec.shape_dist.family == DistFamily::Exponential;
  if (shape_exponential && d != 1)
    return {false, "E exp(c*diam^d) is infinite for every c > 0: exponential footprint "
                   "tail with d = " + std::to_string(d)};
  if (spec.height_kind == HeightKind::CoupledToDiameter && shape_exponential && d != 1)
    return {false, "E exp(c*sigma) inherits the diameter tail violation (sigma = diam)"};
  // Height side: all supported families have an exponential moment.
  return {true, ""};
}

void require_light_tail(const MarkSpec& spec, int d) {
  LightTailReport r = validate_light_tail(spec, d);
  if (!r.ok) throw std::invalid_argument("mark spec fails light-tail condition: " + r.violation);
}

Mark sample_mark(RngStream& rng, const MarkSpec& spec, int d) {
  Mark m;
  switch (spec.shape_family) {
    case ShapeFamily::FixedBall:
      m.shape = Shape::ball(Vec::zero(d), spec.ball_radius);
      break;
    case ShapeFamily::BallRadiusDist:
      m.shape = Shape::ball(Vec::zero(d), spec.shape_dist.sample(rng));
      break;
    case ShapeFamily::FixedBox:
      if (spec.box_half_widths.d != d)
        throw std::invalid_argument("sample_mark: fixed box dimension mismatch");
      m.shape = Shape::box(Vec::zero(d), spec.box_half_widths);
      break;
    case ShapeFamily::BoxHalfWidthDist: {
      Vec hw(d);
      for (int i = 0; i < d; ++i) hw[i] = spec.shape_dist.sample(rng);
      m.shape = Shape::box(Vec::zero(d), hw);
      break;
    }
  }
  switch (spec.height_kind) {
    case HeightKind::Fixed:
      m.sigma = spec.height_value;
      break;
    case HeightKind::FromDist:
      m.sigma = spec.height_dist.sample(rng);
      break;
    case HeightKind::CoupledToDiameter:
      m.sigma = m.shape.diameter();
      break;
  }
  if (!(m.sigma > 0)) throw std::invalid_argument("sample_mark: sigma must be > 0");
  return m;
}

double diameter_quantile(const MarkSpec& spec, int d, double q) {
  switch (spec.shape_family) {
    case ShapeFamily::FixedBall:
      return 2.0 * spec.ball_radius;
    case ShapeFamily::BallRadiusDist:
      return 2.0 * spec.shape_dist.quantile(q);
    case ShapeFamily::FixedBox:
      return 2.0 * spec.box_half_widths.norm();
    case ShapeFamily::BoxHalfWidthDist:
      // 2*||hw||_2 <= 2*sqrt(d)*max_i hw_i; bound each axis by its quantile.
      return 2.0 * std::sqrt(double(d)) * spec.shape_dist.quantile(q);
  }
  return 0.0;
}

double min_inradius(const MarkSpec& spec, int d) {
  (void)d;
  switch (spec.shape_family) {
    case ShapeFamily::FixedBall:
      return spec.ball_radius;
    case ShapeFamily::BallRadiusDist:
      return spec.shape_dist.family == DistFamily::Uniform ? spec.shape_dist.lo
             : spec.shape_dist.family == DistFamily::Constant
                 ? spec.shape_dist.value
                 : spec.shape_dist.quantile(1e-4);
    case ShapeFamily::FixedBox: {
      double m = kInf;
      for (int i = 0; i < spec.box_half_widths.d; ++i) m = std::min(m, spec.box_half_widths[i]);
      return m;
    }
    case ShapeFamily::BoxHalfWidthDist:
      return spec.shape_dist.family == DistFamily::Uniform ? spec.shape_dist.lo
             : spec.shape_dist.family == DistFamily::Constant
                 ? spec.shape_dist.value
                 : spec.shape_dist.quantile(1e-4);
  }
  return 0.0;
}

}  // namespace hail
