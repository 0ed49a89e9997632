#include "hail/functionals.hpp"


#include <charconv>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hail {

namespace {

const double kHalfPi = std::acos(-1.0) / 2;

bool is_vertical(double phi) { return phi >= kHalfPi - 1e-15; }

// Merge closed intervals (tangency within kTol bridges a gap) and return the
// hi end of the component containing r = 0, or nullopt if none contains 0.
std::optional<double> reach_from_zero(std::vector<Interval>& ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::optional<double> reach;
  for (const Interval& iv : ivs) {
    if (!reach) {
      if (iv.lo <= kTol) reach = iv.hi;
      continue;
    }
    if (iv.lo <= *reach + kTol)
      reach = std::max(*reach, iv.hi);
    else if (iv.lo > *reach)
      break;  // sorted; the gap will not close
  }
  return reach;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Vec parse_vec(const std::string& s, int d) {
  auto parts = split(s, ',');
  if (static_cast<int>(parts.size()) != d)
    throw std::invalid_argument("functional key: expected " + std::to_string(d) +
                                " components in '" + s + "'");
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = std::stod(parts[i]);
  return v;
}

}  // namespace

ThetaSpec ThetaSpec::north_pole() { return ThetaSpec{}; }

ThetaSpec ThetaSpec::ray(const Vec& w, double phi) {
  if (!(phi > 0) || phi > kHalfPi + 1e-12)
    throw std::invalid_argument("ThetaSpec: phi must be in (0, pi/2]");
  ThetaSpec t;
  t.kind = ThetaKind::RayDirection;
  t.w = w.normalized();
  t.phi = phi;
  return t;
}

ThetaSpec ThetaSpec::cap(double alpha) {
  if (!(alpha > 0) || alpha > kHalfPi + 1e-12)
    throw std::invalid_argument("ThetaSpec: alpha must be in (0, pi/2]");
  ThetaSpec t;
  t.kind = ThetaKind::VerticalCap;
  t.alpha = alpha;
  return t;
}

ThetaSpec ThetaSpec::spatial_cone(const ConeSpec& cone) {
  ThetaSpec t;
  t.kind = ThetaKind::SpatialCone;
  t.cone = cone;
  t.cone.axis = cone.axis.normalized();
  return t;
}

GaugeSpec GaugeSpec::point(const Vec& v) {
  GaugeSpec g;
  g.kind = GaugeKind::Point;
  g.v = v.normalized();
  return g;
}

GaugeSpec GaugeSpec::half_space(const Vec& w, const Vec& v) {
  GaugeSpec g;
  g.kind = GaugeKind::HalfSpace;
  g.w = w.normalized();
  g.v = v.normalized();
  if (!(g.v.dot(g.w) > kTol))
    throw std::invalid_argument("GaugeSpec: half-space gauge requires v.w > 0");
  return g;
}

GaugeSpec GaugeSpec::ray(const Vec& v) {
  GaugeSpec g;
  g.kind = GaugeKind::Ray;
  g.v = v.normalized();
  return g;
}

double max_height(const HeapState& state, const ThetaSpec& theta) {
  double best = 0.0;  // the defining set always contains h = 0
  switch (theta.kind) {
    case ThetaKind::NorthPole:
      return std::max(0.0, state.height(Vec::zero(state.window().dim())));
    case ThetaKind::SpatialCone:
      for (const PlacedStone& s : state.placed())
        if (cone_intersects(theta.cone, s.footprint)) best = std::max(best, s.top);
      return best;
    case ThetaKind::VerticalCap: {
      if (theta.alpha >= kHalfPi - 1e-15) {
        // Whole upper hemisphere: sup over space of max(0, H).
        return state.sup_height();
      }
      const double tana = std::tan(theta.alpha);
      const Vec origin = Vec::zero(state.window().dim());
      for (const PlacedStone& s : state.placed()) {
        // The stone contributes its top iff some footprint point x satisfies
        // |x| <= top * tan(alpha); smaller h only shrink the admissible ball.
        if (distance_to_point(s.footprint, origin) <= s.top * tana + kTol)
          best = std::max(best, s.top);
      }
      return best;
    }
    case ThetaKind::RayDirection: {
      const Vec origin = Vec::zero(state.window().dim());
      if (is_vertical(theta.phi)) {
        // Vertical ray: the spatial point is the origin at every height.
        for (const PlacedStone& s : state.placed())
          if (contains_point(s.footprint, origin)) best = std::max(best, s.top);
        return best;
      }
      const double tanp = std::tan(theta.phi);
      for (const PlacedStone& s : state.placed()) {
        Interval iv = ray_intersection(s.footprint, origin, theta.w);
        if (iv.is_empty()) continue;
        if (iv.lo * tanp > s.top + kTol) continue;  // the stone sits below the ray
        best = std::max(best, std::min(iv.hi * tanp, s.top));
      }
      return best;
    }
  }
  return best;
}

double gauge_distance(const HeapState& state, const GaugeSpec& gauge) {
  const Vec origin = Vec::zero(state.window().dim());
  switch (gauge.kind) {
    case GaugeKind::Point: {
      // First gap along the ray from 0 in direction v; the footprint union is
      // extended by the ground (points with height 0 belong to it).
      std::vector<Interval> ivs = ray_intersections(state.ground(), origin, gauge.v);
      for (const PlacedStone& s : state.placed()) {
        Interval iv = ray_intersection(s.footprint, origin, gauge.v);
        if (!iv.is_empty()) ivs.push_back(iv);
      }
      auto reach = reach_from_zero(ivs);
      return reach ? *reach : 0.0;
    }
    case GaugeKind::HalfSpace: {
      // A + rv misses everything iff r (v.w) exceeds the support in w.
      double sup = support(state.ground(), gauge.w);
      for (const PlacedStone& s : state.placed())
        sup = std::max(sup, support(s.footprint, gauge.w));
      if (sup == kInf) return kInf;
      return std::max(0.0, sup / gauge.v.dot(gauge.w));
    }
    case GaugeKind::Ray: {
      // Farthest exit parameter along the ray from 0 in direction v.
      double far = 0.0;
      for (const Interval& iv : ray_intersections(state.ground(), origin, gauge.v))
        far = std::max(far, iv.hi);
      for (const PlacedStone& s : state.placed()) {
        Interval iv = ray_intersection(s.footprint, origin, gauge.v);
        if (!iv.is_empty()) far = std::max(far, iv.hi);
      }
      return far;
    }
  }
  return 0.0;
}

double footprint_diameter(const HeapState& state) {
  const auto& placed = state.placed();
  double best = 0.0;
  for (std::size_t i = 0; i < placed.size(); ++i)
    for (std::size_t j = i; j < placed.size(); ++j)
      best = std::max(best, farthest_point_distance(placed[i].footprint, placed[j].footprint));
  return best;
}

double cover_time(const HeapState& state, const std::vector<Vec>& K) {
  double worst = 0.0;
  for (const Vec& x : K) {
    double first = kInf;
    for (const PlacedStone& s : state.placed())
      if (s.time < first && contains_point(s.footprint, x)) first = s.time;
    worst = std::max(worst, first);
    if (worst == kInf) return kInf;
  }
  return worst;
}

std::vector<Vec> cover_grid(const Shape& region, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("cover_grid: eps must be > 0");
  int d = region.dim();
  std::vector<Vec> pts;
  std::array<int, kMaxDim> counts{1, 1, 1};
  for (int i = 0; i < d; ++i)
    counts[i] = std::max(1, static_cast<int>(std::floor(2 * region.extent(i) / eps)) + 1);
  std::array<int, kMaxDim> idx{0, 0, 0};
  while (true) {
    Vec p = region.center;
    for (int i = 0; i < d; ++i)
      p[i] = region.bbox_lo(i) + (counts[i] == 1 ? region.extent(i) : idx[i] * eps);
    if (contains_point(region, p)) pts.push_back(p);
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  return pts;
}

double FunctionalSpec::evaluate(const HeapState& state) const {
  switch (kind) {
    case Kind::Theta:
      return max_height(state, theta);
    case Kind::Gauge:
      return gauge_distance(state, gauge);
    case Kind::PointHeight:
      return std::max(0.0, state.height(probe));
  }
  return 0.0;
}

std::string height_at_key(const Vec& x) {
  std::string key = "height_at:x=";
  for (int i = 0; i < x.d; ++i) {
    if (i) key += ',';
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x[i]);
    key.append(buf, res.ptr);
  }
  return key;
}

FunctionalSpec parse_functional(const std::string& key, int d) {
  FunctionalSpec f;
  f.key = key;
  auto parts = split(key, ':');
  auto params = [&](std::size_t idx) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (parts.size() <= idx) return kv;
    for (const std::string& item : split(parts[idx], ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("functional key: expected k=v in '" + item + "'");
      kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return kv;
  };
  auto get = [](const std::vector<std::pair<std::string, std::string>>& kv,
                const std::string& name) -> std::optional<std::string> {
    for (const auto& [k, v] : kv)
      if (k == name) return v;
    return std::nullopt;
  };

  const std::string& head = parts[0];
  if (head == "north_pole") {
    f.kind = FunctionalSpec::Kind::Theta;
    f.theta = ThetaSpec::north_pole();
  } else if (head == "ray") {
    auto kv = params(1);
    auto w = get(kv, "w"), phi = get(kv, "phi");
    if (!w || !phi) throw std::invalid_argument("functional key: ray needs w= and phi=");
    f.kind = FunctionalSpec::Kind::Theta;
    f.theta = ThetaSpec::ray(parse_vec(*w, d), std::stod(*phi));
  } else if (head == "cap") {
    auto kv = params(1);
    auto alpha = get(kv, "alpha");
    if (!alpha) throw std::invalid_argument("functional key: cap needs alpha=");
    f.kind = FunctionalSpec::Kind::Theta;
    f.theta = ThetaSpec::cap(std::stod(*alpha));
  } else if (head == "cone") {
    auto kv = params(1);
    auto apex = get(kv, "apex"), axis = get(kv, "axis"), alpha = get(kv, "alpha");
    if (!apex || !axis || !alpha)
      throw std::invalid_argument("functional key: cone needs apex=, axis=, alpha=");
    f.kind = FunctionalSpec::Kind::Theta;
    f.theta = ThetaSpec::spatial_cone(
        ConeSpec{parse_vec(*apex, d), parse_vec(*axis, d).normalized(), std::stod(*alpha)});
  } else if (head == "height_at") {
    auto kv = params(1);
    auto x = get(kv, "x");
    if (!x) throw std::invalid_argument("functional key: height_at needs x=");
    f.kind = FunctionalSpec::Kind::PointHeight;
    f.probe = parse_vec(*x, d);
  } else if (head == "gauge") {
    if (parts.size() < 2) throw std::invalid_argument("functional key: gauge needs a variant");
    f.kind = FunctionalSpec::Kind::Gauge;
    auto kv = params(2);
    const std::string& variant = parts[1];
    if (variant == "point") {
      auto v = get(kv, "v");
      if (!v) throw std::invalid_argument("functional key: gauge:point needs v=");
      f.gauge = GaugeSpec::point(parse_vec(*v, d));
    } else if (variant == "halfspace") {
      auto w = get(kv, "w");
      if (!w) throw std::invalid_argument("functional key: gauge:halfspace needs w=");
      Vec wv = parse_vec(*w, d);
      auto v = get(kv, "v");
      f.gauge = GaugeSpec::half_space(wv, v ? parse_vec(*v, d) : wv);
    } else if (variant == "ray") {
      auto v = get(kv, "v");
      if (!v) throw std::invalid_argument("functional key: gauge:ray needs v=");
      f.gauge = GaugeSpec::ray(parse_vec(*v, d));
    } else {
      throw std::invalid_argument("functional key: unknown gauge variant '" + variant + "'");
    }
  } else {
    throw std::invalid_argument("unknown functional key '" + key + "'");
  }
  return f;
}

}  // namespace hail
