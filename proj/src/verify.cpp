#include "hail/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hail/text.hpp"

namespace hail {

namespace {

const double kPi = std::acos(-1.0);
constexpr double kCheckTol = 1e-9;

MarkSpec random_mark_spec(RngStream& rng, bool coupled_only = false) {
  MarkSpec spec;
  switch (rng() % 4) {
    case 0:
      spec.shape_family = ShapeFamily::FixedBall;
      spec.ball_radius = uniform(rng, 0.25, 0.6);
      break;
    case 1:
      spec.shape_family = ShapeFamily::BallRadiusDist;
      spec.shape_dist = Dist::uniform(0.2, uniform(rng, 0.3, 0.6));
      break;
    case 2: {
      spec.shape_family = ShapeFamily::FixedBox;
      int d = 1;  // patched by caller via with_dim
      (void)d;
      spec.box_half_widths = Vec::of({0.0});
      break;
    }
    default:
      spec.shape_family = ShapeFamily::BoxHalfWidthDist;
      spec.shape_dist = Dist::uniform(0.2, uniform(rng, 0.3, 0.5));
  }
  if (coupled_only) {
    spec.height_kind = HeightKind::CoupledToDiameter;
  } else {
    switch (rng() % 3) {
      case 0:
        spec.height_kind = HeightKind::Fixed;
        spec.height_value = uniform(rng, 0.5, 2.0);
        break;
      case 1:
        spec.height_kind = HeightKind::FromDist;
        spec.height_dist = Dist::uniform(0.4, uniform(rng, 0.6, 1.5));
        break;
      default:
        spec.height_kind = HeightKind::CoupledToDiameter;
    }
  }
  return spec;
}

// Fix up family parameters that depend on the dimension.
MarkSpec with_dim(MarkSpec spec, RngStream& rng, int d) {
  if (spec.shape_family == ShapeFamily::FixedBox) {
    Vec hw(d);
    for (int i = 0; i < d; ++i) hw[i] = uniform(rng, 0.25, 0.6);
    spec.box_half_widths = hw;
  }
  return spec;
}

Vec random_unit(RngStream& rng, int d) {
  while (true) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(rng, -1.0, 1.0);
    double n = v.norm();
    if (n > 0.2 && n <= 1.0) return v * (1.0 / n);
  }
}

Ground random_ground(RngStream& rng, int d) {
  switch (rng() % 6) {
    case 0: {
      std::vector<Vec> pts;
      int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) {
        Vec p(d);
        for (int j = 0; j < d; ++j) p[j] = uniform(rng, -1.5, 1.5);
        pts.push_back(p);
      }
      return Ground::point_set(std::move(pts));
    }
    case 1:
      return Ground::ball(Vec::zero(d), uniform(rng, 0.3, 1.0));
    case 2: {
      Vec hw(d);
      for (int i = 0; i < d; ++i) hw[i] = uniform(rng, 0.3, 1.0);
      return Ground::box(Vec::zero(d), hw);
    }
    case 3:
      return Ground::make_cone(Vec::zero(d), random_unit(rng, d), uniform(rng, 0.3, kPi / 2));
    case 4:
      return Ground::half_space(random_unit(rng, d), uniform(rng, -1.0, 1.0));
    default:
      return Ground::full_space(d);
  }
}

// Window whose expected arrival count is near `target`.
Window target_window(RngStream& rng, int d, double lambda, double target) {
  double half = uniform(rng, 1.5, 3.5);
  double vol = 1;
  for (int i = 0; i < d; ++i) vol *= 2 * half;
  double T = std::clamp(target / std::max(lambda * vol, 1e-9), 0.3, 40.0);
  return Window::symmetric(d, half, T);
}

// Probe point: half uniform in the window, half near a placed footprint.
Vec probe_point(RngStream& rng, const HeapState& state) {
  const Window& w = state.window();
  int d = w.dim();
  if (!state.placed().empty() && (rng() & 1)) {
    const PlacedStone& s = state.placed()[rng() % state.placed().size()];
    Vec x = s.footprint.center;
    double spread = std::max(s.footprint.diameter(), 0.2);
    for (int i = 0; i < d; ++i) x[i] += uniform(rng, -spread, spread);
    return x;
  }
  Vec x(d);
  for (int i = 0; i < d; ++i)
    x[i] = uniform(rng, w.center[i] - w.half_widths[i], w.center[i] + w.half_widths[i]);
  return x;
}

std::string describe(double lhs, double rhs) {
  return format_double(lhs) + " vs " + format_double(rhs);
}

}  // namespace

void PropertyReport::fail(std::uint64_t seed, const std::string& what) {
  pass = false;
  ++violations;
  if (detail.empty()) detail = what + " (seed " + std::to_string(seed) + ")";
  if (failing_seeds.size() < 16) failing_seeds.push_back(seed);
}

Realization fixture_a() {
  Realization r;
  r.d = 1;
  r.lambda = 1.0;
  r.seed = 0;
  r.window = Window::symmetric(1, 6.0, 3.0);
  auto arrival = [](double x, double t, double radius, double sigma) {
    Arrival a;
    a.position = Vec::of({x});
    a.time = t;
    a.mark.shape = Shape::ball(Vec::zero(1), radius);
    a.mark.sigma = sigma;
    return a;
  };
  r.arrivals = {arrival(0.3, 1.0, 0.5, 2.0), arrival(1.0, 2.0, 0.3, 1.0),
                arrival(5.0, 2.5, 0.5, 7.0)};
  return r;
}

PropertyReport verify_fixture_cases() {
  PropertyReport rep;
  rep.name = "fixtures";

  {  // hand-traced heap: tops {2, 3}, the isolated stone discarded
    Realization r = fixture_a();
    HeapState state = run(r, Ground::origin(1));
    ++rep.checked;
    if (state.placed().size() != 2 || std::abs(state.placed()[0].top - 2.0) > kCheckTol ||
        std::abs(state.placed()[1].top - 3.0) > kCheckTol ||
        state.event_log().back().kind != EventKind::Discarded)
      rep.fail(0, "fixture heap trace mismatch");
  }
  {  // superadditivity probe: 3 >= 2 + (-inf)
    Realization r = fixture_a();
    const Vec x = Vec::of({0.0}), y = Vec::of({1.0});
    const double t1 = 1.5, t2 = 2.5;
    double lhs = run(truncated(r, t2), Ground::origin(1)).height(x + y);
    double term1 = run(truncated(r, t1), Ground::origin(1)).height(x);
    double term2 =
        run(truncated(shift(r, x, t1), t2 - t1), Ground::origin(1)).height(y);
    ++rep.checked;
    if (!(lhs + kCheckTol >= term1 + term2) || std::abs(lhs - 3.0) > kCheckTol ||
        std::abs(term1 - 2.0) > kCheckTol || term2 != -kInf)
      rep.fail(0, "fixture superadditivity probe: " + describe(lhs, term1 + term2));
  }
  {  // duality fixture: one arrival, half-line ground, both sides equal 1
    Realization r;
    r.d = 1;
    r.lambda = 1.0;
    r.window = Window::symmetric(1, 6.0, 2.0);
    Arrival a;
    a.position = Vec::of({-0.3});
    a.time = 1.0;
    a.mark.shape = Shape::ball(Vec::zero(1), 0.5);
    a.mark.sigma = 1.0;
    r.arrivals = {a};
    ConeSpec cone{Vec::zero(1), Vec::of({1.0}), kPi / 2};
    Ground cg = Ground::make_cone(cone.apex, cone.axis, cone.half_angle);
    double primal = std::max(0.0, run(r, cg).height(Vec::zero(1)));
    HeapState dual = run(reverse(r, 2.0), Ground::origin(1));
    double dual_h = max_height(dual, ThetaSpec::spatial_cone(cone));
    ++rep.checked;
    if (std::abs(primal - 1.0) > kCheckTol || std::abs(dual_h - 1.0) > kCheckTol)
      rep.fail(0, "duality fixture: " + describe(primal, dual_h));
  }
  return rep;
}

PropertyReport verify_oracle_equivalence(std::uint64_t seed, int n_realizations) {
  PropertyReport rep;
  rep.name = "oracle-equivalence";
  const double lambdas[3] = {0.2, 1.0, 5.0};
  for (int i = 0; i < n_realizations; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 3;
    const double lambda = lambdas[(i / 3) % 3];
    const MarkSpec spec = with_dim(random_mark_spec(prng), prng, d);
    const Ground ground = random_ground(prng, d);
    const Window w = target_window(prng, d, lambda, 250.0);
    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);
    HeapState indexed = run(r, ground);
    HeapState oracle = brute_force_run(r, ground);
    ++rep.checked;
    if (!same_outcome(indexed, oracle))
      rep.fail(iseed, "indexed and brute-force runs disagree");
  }
  return rep;
}

PropertyReport verify_monotonicity(std::uint64_t seed, int n_pairs, int probes_per_pair) {
  PropertyReport rep;
  rep.name = "monotonicity";
  for (int i = 0; i < n_pairs; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 2;
    const double lambda = uniform(prng, 0.8, 2.0);
    const MarkSpec spec = with_dim(random_mark_spec(prng), prng, d);
    const Window w = target_window(prng, d, lambda, 220.0);
    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);

    const int variant = i % 4;
    Ground g1 = Ground::origin(d), g2 = Ground::origin(d);
    Realization r2 = r;
    if (variant == 0) {
      switch (prng() % 4) {
        case 0: {
          Vec x0(d);
          for (int j = 0; j < d; ++j) x0[j] = uniform(prng, -1.5, 1.5);
          g2 = Ground::point_set({Vec::zero(d), x0});
          break;
        }
        case 1:
          g2 = Ground::ball(Vec::zero(d), uniform(prng, 0.2, 0.8));
          break;
        case 2: {
          double r1 = uniform(prng, 0.2, 0.6);
          g1 = Ground::ball(Vec::zero(d), r1);
          g2 = Ground::ball(Vec::zero(d), r1 + uniform(prng, 0.1, 0.8));
          break;
        }
        default: {
          Vec axis = random_unit(prng, d);
          double a1 = uniform(prng, 0.3, kPi / 2 - 0.2);
          g1 = Ground::make_cone(Vec::zero(d), axis, a1);
          g2 = Ground::make_cone(Vec::zero(d), axis, std::min(a1 + uniform(prng, 0.1, 0.6), kPi / 2));
        }
      }
    } else if (variant == 2 && !r2.arrivals.empty()) {
      r2.arrivals[prng() % r2.arrivals.size()].mark.sigma += uniform(prng, 0.2, 1.5);
    } else if (variant == 3 && !r2.arrivals.empty()) {
      Arrival& a = r2.arrivals[prng() % r2.arrivals.size()];
      double f = 1.0 + uniform(prng, 0.05, 0.5);
      if (a.mark.shape.kind == ShapeKind::Ball) {
        a.mark.shape.radius *= f;
      } else {
        for (int j = 0; j < d; ++j) a.mark.shape.half_widths[j] *= f;
      }
    }

    HeapState s1 = run(r, g1);
    HeapState s2 = run(variant == 0 ? r : r2, variant == 0 ? g2 : g1);
    for (int p = 0; p < probes_per_pair; ++p) {
      Vec x = probe_point(prng, s2);
      ++rep.checked;
      if (variant == 1) {
        double t1 = uniform(prng, 0.0, w.horizon);
        double t2 = uniform(prng, t1, w.horizon);
        double h1 = s1.height_at_time(x, t1), h2 = s1.height_at_time(x, t2);
        if (h1 > h2 + kCheckTol) {
          rep.fail(iseed, "height decreased in time: " + describe(h1, h2));
          break;
        }
      } else {
        double t = uniform(prng, 0.0, w.horizon);
        double h1 = s1.height_at_time(x, t), h2 = s2.height_at_time(x, t);
        if (h1 > h2 + kCheckTol) {
          rep.fail(iseed, "coupled height decreased (variant " + std::to_string(variant) +
                              "): " + describe(h1, h2));
          break;
        }
      }
    }
  }
  return rep;
}

PropertyReport verify_superadditivity(std::uint64_t seed, int n_tuples) {
  PropertyReport rep;
  rep.name = "superadditivity";
  for (int i = 0; i < n_tuples; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 2;
    const double lambda = uniform(prng, 0.5, 2.0);
    const MarkSpec spec = with_dim(random_mark_spec(prng), prng, d);
    const Window w = target_window(prng, d, lambda, 200.0);
    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);
    const Ground stick = Ground::origin(d);

    Vec x(d), y(d);
    for (int j = 0; j < d; ++j) {
      x[j] = uniform(prng, -2.0, 2.0);
      y[j] = uniform(prng, -2.0, 2.0);
    }
    const double t2 = uniform(prng, 0.4 * w.horizon, w.horizon);
    const double t1 = uniform(prng, 0.0, t2);

    double lhs = run(truncated(r, t2), stick).height(x + y);
    double term1 = run(truncated(r, t1), stick).height(x);
    double term2 = run(truncated(shift(r, x, t1), t2 - t1), stick).height(y);
    ++rep.checked;
    if (lhs + kCheckTol < term1 + term2)
      rep.fail(iseed, "superadditivity violated: " + describe(lhs, term1 + term2));
  }
  return rep;
}

PropertyReport verify_cone_duality(std::uint64_t seed, int n_realizations) {
  PropertyReport rep;
  rep.name = "cone-duality";
  for (int i = 0; i < n_realizations; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 2;
    const double lambda = uniform(prng, 0.5, 2.0);
    const MarkSpec spec = with_dim(random_mark_spec(prng), prng, d);
    const double horizon = uniform(prng, 1.0, 3.5);
    const Window w = Window::symmetric(d, uniform(prng, 3.0, 6.0), horizon);

    ConeSpec cone;
    cone.apex = Vec::zero(d);
    cone.axis = random_unit(prng, d);
    cone.half_angle = (i % 7 == 0) ? kPi / 2 : uniform(prng, 0.25, kPi / 2);
    Ground cg = Ground::make_cone(cone.apex, cone.axis, cone.half_angle);

    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);
    double primal = std::max(0.0, run(r, cg).height(Vec::zero(d)));
    HeapState dual = run(reverse(r, horizon), Ground::origin(d));
    double dual_h = max_height(dual, ThetaSpec::spatial_cone(cone));
    ++rep.checked;
    if (std::abs(primal - dual_h) > kCheckTol)
      rep.fail(iseed, "duality mismatch: " + describe(primal, dual_h));
  }
  return rep;
}

PropertyReport verify_diameter_coupling(std::uint64_t seed, int n_realizations) {
  PropertyReport rep;
  rep.name = "diameter-coupling";
  for (int i = 0; i < n_realizations; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 3;
    const double lambda = uniform(prng, 0.5, 2.0);
    const MarkSpec spec = with_dim(random_mark_spec(prng, /*coupled_only=*/true), prng, d);
    const Window w = target_window(prng, d, lambda, 200.0);
    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);
    HeapState state = run(r, Ground::origin(d));
    ++rep.checked;
    double sup = state.sup_height();
    double diam = footprint_diameter(state);
    if (4.0 * sup + kCheckTol < diam)
      rep.fail(iseed, "4 sup H < diam F: " + describe(4.0 * sup, diam));
  }
  return rep;
}

PropertyReport verify_gauge_domination(std::uint64_t seed, int n_realizations) {
  PropertyReport rep;
  rep.name = "gauge-domination";
  for (int i = 0; i < n_realizations; ++i) {
    const std::uint64_t iseed = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngStream prng(iseed);
    const int d = 1 + i % 2;
    const double lambda = uniform(prng, 0.5, 2.0);
    const MarkSpec spec = with_dim(random_mark_spec(prng), prng, d);
    const Window w = target_window(prng, d, lambda, 220.0);
    Realization r = generate(derive_seed(iseed, 1), lambda, w, spec);
    HeapState state = run(r, Ground::origin(d));
    Vec v = random_unit(prng, d);

    double dp = gauge_distance(state, GaugeSpec::point(v));
    double dr = gauge_distance(state, GaugeSpec::ray(v));
    double dh = gauge_distance(state, GaugeSpec::half_space(v, v));
    double diam = footprint_diameter(state);
    ++rep.checked;
    if (dp > dr + kCheckTol || dr > dh + kCheckTol || dh > diam + kCheckTol) {
      rep.fail(iseed, "gauge domination chain broken: point " + format_double(dp) + ", ray " +
                          format_double(dr) + ", half-space " + format_double(dh) + ", diam " +
                          format_double(diam));
      continue;
    }
    // Maximal height is monotone in the direction set.
    double a1 = uniform(prng, 0.2, kPi / 2 - 0.1);
    double a2 = std::min(a1 + uniform(prng, 0.05, 0.5), kPi / 2);
    ++rep.checked;
    if (max_height(state, ThetaSpec::cap(a1)) >
        max_height(state, ThetaSpec::cap(a2)) + kCheckTol) {
      rep.fail(iseed, "cap height not monotone in alpha");
      continue;
    }
    Vec axis = random_unit(prng, d);
    ConeSpec c1{Vec::zero(d), axis, a1}, c2{Vec::zero(d), axis, a2};
    ++rep.checked;
    if (max_height(state, ThetaSpec::spatial_cone(c1)) >
        max_height(state, ThetaSpec::spatial_cone(c2)) + kCheckTol)
      rep.fail(iseed, "cone height not monotone in the half-angle");
  }
  return rep;
}

PropertyReport verify_rain_properties(std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "rain";
  const MarkSpec spec = MarkSpec::fixed_ball(0.3, 1.0);

  {  // Poisson count moments: window volume 30, lambda 2 -> mean 60.
    const Window w(Vec::of({0.0}), Vec::of({3.0}), 5.0);
    const int n = 10000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
      double c = static_cast<double>(
          generate(derive_seed(seed, 1000 + i), 2.0, w, spec).arrivals.size());
      sum += c;
      sumsq += c * c;
    }
    double mean = sum / n;
    double var = (sumsq - n * mean * mean) / (n - 1);
    ++rep.checked;
    if (std::abs(mean - 60.0) > 4.0 * std::sqrt(60.0 / n))
      rep.fail(seed, "Poisson mean off: " + describe(mean, 60.0));
    ++rep.checked;
    double se_var = std::sqrt((2.0 * 60.0 * 60.0 + 60.0) / n);
    if (std::abs(var - 60.0) > 4.0 * se_var)
      rep.fail(seed, "Poisson variance off: " + describe(var, 60.0));
  }

  {  // Disjoint sub-windows receive uncorrelated counts.
    const Window w(Vec::of({0.0}), Vec::of({3.0}), 2.0);
    const int n = 10000;
    double sx = 0, sy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      Realization r = generate(derive_seed(seed, 50000 + i), 1.0, w, spec);
      double c1 = 0, c2 = 0;
      for (const Arrival& a : r.arrivals) {
        if (a.position[0] >= -3.0 && a.position[0] <= -1.0) ++c1;
        if (a.position[0] >= 1.0 && a.position[0] <= 3.0) ++c2;
      }
      sx += c1;
      sy += c2;
      sxy += c1 * c2;
    }
    double cov = sxy / n - (sx / n) * (sy / n);
    double se = std::sqrt((sx / n) * (sy / n) / n);
    ++rep.checked;
    if (std::abs(cov) > 4.0 * se)
      rep.fail(seed, "disjoint-window covariance off: " + format_double(cov));
  }

  {  // Shift group property on the surviving arrivals.
    const Window w = Window::symmetric(2, 4.0, 6.0);
    Realization r = generate(derive_seed(seed, 7), 1.0, w, MarkSpec::fixed_ball(0.4, 1.0));
    Vec x1 = Vec::of({0.7, -0.3}), x2 = Vec::of({-1.1, 0.5});
    Realization a = shift(shift(r, x1, 1.37), x2, 2.11);
    Realization b = shift(r, x1 + x2, 1.37 + 2.11);
    ++rep.checked;
    if (a.arrivals.size() != b.arrivals.size()) {
      rep.fail(seed, "shift composition changed the arrival count");
    } else {
      for (std::size_t i = 0; i < a.arrivals.size(); ++i) {
        if (dist(a.arrivals[i].position, b.arrivals[i].position) > 1e-9 ||
            std::abs(a.arrivals[i].time - b.arrivals[i].time) > 1e-9) {
          rep.fail(seed, "shift composition mismatch");
          break;
        }
      }
    }
    ++rep.checked;
    Realization id = shift(r, Vec::zero(2), 0.0);
    if (id.arrivals.size() != r.arrivals.size()) rep.fail(seed, "shift by zero dropped arrivals");
  }

  {  // Reversal is an involution on [0,t] and preserves positions and marks.
    const Window w = Window::symmetric(1, 4.0, 4.0);
    Realization r = generate(derive_seed(seed, 8), 1.5, w, spec);
    const double t = 3.0;
    Realization rr = reverse(reverse(r, t), t);
    Realization rt;
    rt = r;
    rt.arrivals.clear();
    for (const Arrival& a : r.arrivals)
      if (a.time <= t) rt.arrivals.push_back(a);
    ++rep.checked;
    if (rr.arrivals.size() != rt.arrivals.size()) {
      rep.fail(seed, "double reversal changed the arrival count");
    } else {
      for (std::size_t i = 0; i < rr.arrivals.size(); ++i) {
        if (std::abs(rr.arrivals[i].time - rt.arrivals[i].time) > 1e-9 ||
            !(rr.arrivals[i].position == rt.arrivals[i].position) ||
            rr.arrivals[i].mark.sigma != rt.arrivals[i].mark.sigma) {
          rep.fail(seed, "double reversal mismatch");
          break;
        }
      }
    }
    // Multisets of positions are preserved by one reversal.
    Realization rev = reverse(r, t);
    std::vector<double> p1, p2;
    for (const Arrival& a : rt.arrivals) p1.push_back(a.position[0]);
    for (const Arrival& a : rev.arrivals) p2.push_back(a.position[0]);
    std::sort(p1.begin(), p1.end());
    std::sort(p2.begin(), p2.end());
    ++rep.checked;
    if (p1 != p2) rep.fail(seed, "reversal changed the position multiset");
  }

  {  // Coupled marks: sigma equals the diameter exactly, every draw.
    RngStream rng(derive_seed(seed, 9));
    MarkSpec coupled;
    coupled.shape_family = ShapeFamily::BallRadiusDist;
    coupled.shape_dist = Dist::uniform(0.2, 0.7);
    coupled.height_kind = HeightKind::CoupledToDiameter;
    for (int i = 0; i < 1000; ++i) {
      Mark m = sample_mark(rng, coupled, 2);
      ++rep.checked;
      if (m.sigma != m.shape.diameter()) {
        rep.fail(seed, "coupled sigma differs from the diameter");
        break;
      }
    }
  }
  return rep;
}

PropertyReport verify_determinism(std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "determinism";
  {  // Identical seeds give bitwise-identical realizations.
    const Window w = Window::symmetric(2, 3.0, 4.0);
    MarkSpec spec;
    spec.shape_family = ShapeFamily::BallRadiusDist;
    spec.shape_dist = Dist::uniform(0.2, 0.5);
    spec.height_kind = HeightKind::FromDist;
    spec.height_dist = Dist::exponential(1.0);
    Realization a = generate(derive_seed(seed, 1), 1.5, w, spec);
    Realization b = generate(derive_seed(seed, 1), 1.5, w, spec);
    ++rep.checked;
    bool same = a.arrivals.size() == b.arrivals.size();
    for (std::size_t i = 0; same && i < a.arrivals.size(); ++i)
      same = a.arrivals[i].time == b.arrivals[i].time &&
             a.arrivals[i].position == b.arrivals[i].position &&
             a.arrivals[i].mark.sigma == b.arrivals[i].mark.sigma;
    if (!same) rep.fail(seed, "same seed produced different realizations");
  }
  {  // rate() is bit-identical across parallelism degrees.
    ExperimentPlan plan;
    plan.d = 1;
    plan.lambda = 1.0;
    plan.marks = MarkSpec::fixed_ball(0.5, 1.0);
    plan.ground = Ground::origin(1);
    plan.functionals = {"north_pole", "gauge:point:v=1"};
    plan.checkpoints = {2.5, 5.0, 7.5, 10.0};
    plan.replicates = 16;
    plan.base_seed = derive_seed(seed, 2);
    plan.window.half_width = 14.0;

    plan.jobs = 1;
    auto est1 = rate(plan);
    plan.jobs = 4;
    auto est4 = rate(plan);
    ++rep.checked;
    bool same = est1.size() == est4.size();
    for (std::size_t i = 0; same && i < est1.size(); ++i)
      same = est1[i].slope == est4[i].slope && est1[i].std_error == est4[i].std_error &&
             est1[i].checkpoint_means == est4[i].checkpoint_means;
    if (!same) rep.fail(seed, "rate() differs between jobs=1 and jobs=4");
  }
  return rep;
}

std::vector<SuiteEntry> verification_suites() {
  return {
      {"fixtures", [](std::uint64_t) { return verify_fixture_cases(); }},
      {"oracle", [](std::uint64_t s) { return verify_oracle_equivalence(s, 200); }},
      {"monotonicity", [](std::uint64_t s) { return verify_monotonicity(s, 60, 400); }},
      {"superadditivity", [](std::uint64_t s) { return verify_superadditivity(s, 200); }},
      {"duality", [](std::uint64_t s) { return verify_cone_duality(s, 200); }},
      {"diameter-coupling", [](std::uint64_t s) { return verify_diameter_coupling(s, 150); }},
      {"gauges", [](std::uint64_t s) { return verify_gauge_domination(s, 100); }},
      {"rain", [](std::uint64_t s) { return verify_rain_properties(s); }},
      {"determinism", [](std::uint64_t s) { return verify_determinism(s); }},
  };
}

}  // namespace hail
