#include "hail/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hail {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(ctx + ": unknown key '" + key + "'");
  }
}

double get_num(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing '" + key + "'");
  if (!j[key].is_number()) throw ConfigError(ctx + ": '" + key + "' must be a number");
  return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j[key].get<double>() : fallback;
}

Vec get_vec(const json& j, const std::string& key, int d, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_array())
    throw ConfigError(ctx + ": '" + key + "' must be an array of " + std::to_string(d) + " numbers");
  const auto& arr = j[key];
  if (static_cast<int>(arr.size()) != d)
    throw ConfigError(ctx + ": '" + key + "' must have " + std::to_string(d) + " components");
  Vec v(d);
  for (int i = 0; i < d; ++i) {
    if (!arr[i].is_number()) throw ConfigError(ctx + ": '" + key + "' must be numeric");
    v[i] = arr[i].get<double>();
  }
  return v;
}

Dist parse_dist(const json& j, const std::string& ctx) {
  check_keys(j, {"family", "value", "lo", "hi", "rate", "cap"}, ctx);
  const std::string family = j.value("family", "");
  try {
    if (family == "constant") return Dist::constant(get_num(j, "value", ctx));
    if (family == "uniform") return Dist::uniform(get_num(j, "lo", ctx), get_num(j, "hi", ctx));
    if (family == "exponential") return Dist::exponential(get_num(j, "rate", ctx));
    if (family == "truncated_exponential")
      return Dist::truncated_exponential(get_num(j, "rate", ctx), get_num(j, "cap", ctx));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  throw ConfigError(ctx + ": unknown distribution family '" + family + "'");
}

MarkSpec parse_marks(const json& j, int d) {
  check_keys(j, {"shape", "height"}, "marks");
  if (!j.contains("shape") || !j.contains("height"))
    throw ConfigError("marks: needs 'shape' and 'height'");
  MarkSpec spec;

  const json& s = j["shape"];
  check_keys(s, {"family", "radius", "radius_dist", "half_widths", "half_width_dist"},
             "marks.shape");
  const std::string family = s.value("family", "");
  if (family == "ball") {
    if (s.contains("radius_dist")) {
      spec.shape_family = ShapeFamily::BallRadiusDist;
      spec.shape_dist = parse_dist(s["radius_dist"], "marks.shape.radius_dist");
    } else {
      spec.shape_family = ShapeFamily::FixedBall;
      spec.ball_radius = get_num(s, "radius", "marks.shape");
      if (!(spec.ball_radius > 0)) throw ConfigError("marks.shape: radius must be > 0");
    }
  } else if (family == "box") {
    if (s.contains("half_width_dist")) {
      spec.shape_family = ShapeFamily::BoxHalfWidthDist;
      spec.shape_dist = parse_dist(s["half_width_dist"], "marks.shape.half_width_dist");
    } else {
      spec.shape_family = ShapeFamily::FixedBox;
      spec.box_half_widths = get_vec(s, "half_widths", d, "marks.shape");
      for (int i = 0; i < d; ++i)
        if (!(spec.box_half_widths[i] > 0))
          throw ConfigError("marks.shape: half-widths must be > 0");
    }
  } else {
    throw ConfigError("marks.shape: unknown family '" + family + "'");
  }

  const json& h = j["height"];
  check_keys(h, {"kind", "value", "dist"}, "marks.height");
  const std::string kind = h.value("kind", "");
  if (kind == "fixed") {
    spec.height_kind = HeightKind::Fixed;
    spec.height_value = get_num(h, "value", "marks.height");
    if (!(spec.height_value > 0)) throw ConfigError("marks.height: value must be > 0");
  } else if (kind == "dist") {
    spec.height_kind = HeightKind::FromDist;
    if (!h.contains("dist")) throw ConfigError("marks.height: missing 'dist'");
    spec.height_dist = parse_dist(h["dist"], "marks.height.dist");
  } else if (kind == "coupled_to_diameter") {
    spec.height_kind = HeightKind::CoupledToDiameter;
  } else {
    throw ConfigError("marks.height: unknown kind '" + kind + "'");
  }
  return spec;
}

std::vector<double> parse_checkpoints(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("checkpoints: expected a non-empty array");
  std::vector<double> out;
  double prev = 0;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError("checkpoints: must be numeric");
    double t = v.get<double>();
    if (!(t > prev)) throw ConfigError("checkpoints: must be positive and strictly increasing");
    out.push_back(t);
    prev = t;
  }
  return out;
}

WindowPolicy parse_window(const json& j) {
  WindowPolicy w;
  check_keys(j, {"half_width", "r_cut", "censoring"}, "window");
  if (j.contains("half_width")) w.half_width = get_num(j, "half_width", "window");
  if (j.contains("r_cut")) w.r_cut = get_num(j, "r_cut", "window");
  const std::string rule = j.value("censoring", "rerun_then_exclude");
  if (rule == "rerun_then_exclude")
    w.censoring = Censoring::RerunThenExclude;
  else if (rule == "exclude")
    w.censoring = Censoring::Exclude;
  else if (rule == "keep")
    w.censoring = Censoring::Keep;
  else
    throw ConfigError("window.censoring: unknown rule '" + rule + "'");
  return w;
}

OffspringDist parse_offspring(const json& j) {
  check_keys(j, {"family", "count", "trials", "p", "mean"}, "branching.offspring");
  const std::string family = j.value("family", "");
  try {
    if (family == "constant")
      return OffspringDist::constant(static_cast<std::int64_t>(get_num(j, "count", "offspring")));
    if (family == "binomial")
      return OffspringDist::binomial(static_cast<std::int64_t>(get_num(j, "trials", "offspring")),
                                     get_num(j, "p", "offspring"));
    if (family == "poisson") return OffspringDist::poisson(get_num(j, "mean", "offspring"));
    if (family == "one_plus_poisson")
      return OffspringDist::one_plus_poisson(get_num(j, "mean", "offspring"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("branching.offspring: ") + e.what());
  }
  throw ConfigError("branching.offspring: unknown family '" + family + "'");
}

}  // namespace

Ground parse_ground_json(const json& j, int d) {
  check_keys(j,
             {"kind", "points", "center", "radius", "half_widths", "apex", "axis", "half_angle",
              "normal", "offset"},
             "ground");
  const std::string kind = j.value("kind", "");
  try {
    if (kind == "origin") return Ground::origin(d);
    if (kind == "point_set") {
      if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw ConfigError("ground: point_set needs a non-empty 'points' array");
      std::vector<Vec> pts;
      for (const auto& p : j["points"]) {
        if (!p.is_array() || static_cast<int>(p.size()) != d)
          throw ConfigError("ground: each point needs " + std::to_string(d) + " components");
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = p[i].get<double>();
        pts.push_back(v);
      }
      return Ground::point_set(std::move(pts));
    }
    if (kind == "ball")
      return Ground::ball(get_vec(j, "center", d, "ground"), get_num(j, "radius", "ground"));
    if (kind == "box")
      return Ground::box(get_vec(j, "center", d, "ground"), get_vec(j, "half_widths", d, "ground"));
    if (kind == "cone")
      return Ground::make_cone(get_vec(j, "apex", d, "ground"), get_vec(j, "axis", d, "ground"),
                               get_num(j, "half_angle", "ground"));
    if (kind == "half_space")
      return Ground::half_space(get_vec(j, "normal", d, "ground"), get_num(j, "offset", "ground"));
    if (kind == "full_space") return Ground::full_space(d);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ground: ") + e.what());
  }
  throw ConfigError("ground: unknown kind '" + kind + "'");
}

Ground parse_ground_string(const std::string& text, int d) {
  // Compact grammar for CLI flags: "origin", "points:0 0|1.5 0", "ball:0 0;0.5",
  // "box:0 0;1 1", "cone:0 0;1 0;0.785", "halfspace:1 0;0", "full".
  auto split = [](const std::string& s, char sep) {
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
  };
  auto vec_of = [&](const std::string& s) {
    std::istringstream ss(s);
    Vec v(d);
    for (int i = 0; i < d; ++i)
      if (!(ss >> v[i])) throw ConfigError("ground: expected " + std::to_string(d) + " numbers in '" + s + "'");
    return v;
  };
  auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "origin") return Ground::origin(d);
    if (head == "points") {
      std::vector<Vec> pts;
      for (const std::string& p : split(rest, '|')) pts.push_back(vec_of(p));
      return Ground::point_set(std::move(pts));
    }
    auto parts = split(rest, ';');
    if (head == "ball" && parts.size() == 2)
      return Ground::ball(vec_of(parts[0]), std::stod(parts[1]));
    if (head == "box" && parts.size() == 2) return Ground::box(vec_of(parts[0]), vec_of(parts[1]));
    if (head == "cone" && parts.size() == 3)
      return Ground::make_cone(vec_of(parts[0]), vec_of(parts[1]), std::stod(parts[2]));
    if (head == "halfspace" && parts.size() == 2)
      return Ground::half_space(vec_of(parts[0]), std::stod(parts[1]));
    if (head == "full") return Ground::full_space(d);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ground: ") + e.what());
  }
  throw ConfigError("ground: cannot parse '" + text + "'");
}

Config parse_config(const json& j) {
  static const std::set<std::string> top_keys = {
      "kind",       "seed",      "dimension",   "intensity",  "marks",       "ground",
      "functionals", "checkpoints", "replicates", "method",    "window",      "horizon",
      "direction",  "phi_grid",  "significance", "hit_check", "target",      "offspring",
      "height",     "n_max",     "population_cap", "suites"};
  check_keys(j, top_keys, "config");

  Config cfg;
  cfg.raw = j;
  cfg.kind = j.value("kind", "");
  static const std::set<std::string> kinds = {"simulate", "rate",      "phase", "gauge",
                                              "cover",    "branching", "verify"};
  if (!kinds.count(cfg.kind)) throw ConfigError("config: unknown kind '" + cfg.kind + "'");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() ||
        (j["seed"].is_number_integer() && !j["seed"].is_number_unsigned() &&
         j["seed"].get<std::int64_t>() < 0))
      throw ConfigError("config: seed must be a 64-bit unsigned integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  if (cfg.kind == "verify") {
    if (j.contains("suites")) {
      for (const auto& s : j["suites"]) cfg.suites.push_back(s.get<std::string>());
    } else {
      cfg.suites = {"all"};
    }
    return cfg;
  }

  if (cfg.kind == "branching") {
    if (!j.contains("offspring") || !j.contains("height"))
      throw ConfigError("branching: needs 'offspring' and 'height'");
    cfg.branching.offspring = parse_offspring(j["offspring"]);
    cfg.branching.height = parse_dist(j["height"], "branching.height");
    if (j.contains("population_cap"))
      cfg.branching.population_cap =
          static_cast<std::int64_t>(get_num(j, "population_cap", "branching"));
    cfg.branching_n_max = static_cast<int>(get_num_or(j, "n_max", 20));
    cfg.branching_replicates = static_cast<int>(get_num_or(j, "replicates", 1000));
    if (cfg.branching_n_max < 1 || cfg.branching_replicates < 1)
      throw ConfigError("branching: n_max and replicates must be >= 1");
    try {
      cfg.branching.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("branching: ") + e.what());
    }
    return cfg;
  }

  // Experiment kinds share the plan core.
  ExperimentPlan& plan = cfg.plan;
  plan.d = static_cast<int>(get_num(j, "dimension", "config"));
  if (plan.d < 1 || plan.d > kMaxDim) throw ConfigError("config: dimension must be in [1,3]");
  plan.lambda = get_num(j, "intensity", "config");
  if (plan.lambda < 0) throw ConfigError("config: intensity must be >= 0");
  if (!j.contains("marks")) throw ConfigError("config: missing 'marks'");
  plan.marks = parse_marks(j["marks"], plan.d);
  if (!j.contains("ground")) throw ConfigError("config: missing 'ground'");
  plan.ground = parse_ground_json(j["ground"], plan.d);
  plan.base_seed = cfg.seed;
  if (j.contains("window")) plan.window = parse_window(j["window"]);
  if (j.contains("replicates"))
    plan.replicates = static_cast<int>(get_num(j, "replicates", "config"));
  if (j.contains("method")) {
    const std::string m = j["method"].get<std::string>();
    if (m == "increment-mean")
      plan.method = RateMethod::IncrementMean;
    else if (m == "ls")
      plan.method = RateMethod::ThroughOriginLS;
    else
      throw ConfigError("config: unknown method '" + m + "'");
  }

  LightTailReport tail = validate_light_tail(plan.marks, plan.d);
  if (!tail.ok) throw ConfigError("marks: " + tail.violation);

  if (cfg.kind == "simulate") {
    cfg.sim_horizon = get_num(j, "horizon", "config");
    if (!(cfg.sim_horizon > 0)) throw ConfigError("config: horizon must be > 0");
    cfg.sim_replicates = static_cast<int>(get_num_or(j, "replicates", 1));
    if (cfg.sim_replicates < 1) throw ConfigError("config: replicates must be >= 1");
    plan.checkpoints = {cfg.sim_horizon};
    plan.functionals = {"north_pole"};
    plan.replicates = std::max(plan.replicates, 2);
    return cfg;
  }

  if (!j.contains("checkpoints")) throw ConfigError("config: missing 'checkpoints'");
  plan.checkpoints = parse_checkpoints(j["checkpoints"]);

  if (cfg.kind == "rate" || cfg.kind == "gauge") {
    if (!j.contains("functionals") || !j["functionals"].is_array() || j["functionals"].empty())
      throw ConfigError("config: missing 'functionals'");
    for (const auto& f : j["functionals"]) {
      const std::string key = f.get<std::string>();
      FunctionalSpec spec;
      try {
        spec = parse_functional(key, plan.d);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("functionals: ") + e.what());
      }
      if (cfg.kind == "gauge" && spec.kind != FunctionalSpec::Kind::Gauge)
        throw ConfigError("gauge experiment: functional '" + key + "' is not a gauge");
      plan.functionals.push_back(key);
    }
    if (cfg.kind == "gauge" && j.contains("hit_check")) {
      const json& h = j["hit_check"];
      check_keys(h, {"radius", "replicates", "direction"}, "hit_check");
      HitCheckSpec hc;
      hc.radius = get_num(h, "radius", "hit_check");
      hc.replicates = static_cast<int>(get_num_or(h, "replicates", 10000));
      hc.direction = h.contains("direction") ? get_vec(h, "direction", plan.d, "hit_check")
                                             : Vec::axis_unit(plan.d, 0);
      cfg.hit_check = hc;
    }
    return cfg;
  }

  if (cfg.kind == "phase") {
    cfg.phase_direction =
        j.contains("direction") ? get_vec(j, "direction", plan.d, "config") : Vec::axis_unit(plan.d, 0);
    cfg.phase_direction = cfg.phase_direction.normalized();
    if (!j.contains("phi_grid") || !j["phi_grid"].is_array() || j["phi_grid"].empty())
      throw ConfigError("phase: missing 'phi_grid'");
    double prev = 0;
    for (const auto& v : j["phi_grid"]) {
      double phi = v.get<double>();
      if (!(phi > prev) || phi > std::acos(-1.0) / 2 + 1e-12)
        throw ConfigError("phase: phi_grid must be increasing within (0, pi/2]");
      cfg.phi_grid.push_back(phi);
      prev = phi;
    }
    cfg.significance = get_num_or(j, "significance", 3.0);
    plan.functionals = {"north_pole"};  // placeholder; phase_plan swaps in the rays
    return cfg;
  }

  if (cfg.kind == "cover") {
    if (!j.contains("target")) throw ConfigError("cover: missing 'target'");
    const json& t = j["target"];
    check_keys(t, {"points", "shape", "epsilon"}, "cover.target");
    if (t.contains("points")) {
      for (const auto& p : t["points"]) {
        Vec v(plan.d);
        for (int i = 0; i < plan.d; ++i) v[i] = p[i].get<double>();
        cfg.cover.points.push_back(v);
      }
    } else if (t.contains("shape")) {
      const json& s = t["shape"];
      check_keys(s, {"kind", "center", "radius", "half_widths"}, "cover.target.shape");
      const std::string kind = s.value("kind", "");
      Shape shape;
      if (kind == "ball")
        shape = Shape::ball(get_vec(s, "center", plan.d, "cover"), get_num(s, "radius", "cover"));
      else if (kind == "box")
        shape = Shape::box(get_vec(s, "center", plan.d, "cover"),
                           get_vec(s, "half_widths", plan.d, "cover"));
      else
        throw ConfigError("cover.target.shape: unknown kind '" + kind + "'");
      double eps = t.contains("epsilon") ? get_num(t, "epsilon", "cover")
                                         : min_inradius(plan.marks, plan.d) / 4.0;
      cfg.cover.points = cover_grid(shape, eps);
    } else {
      throw ConfigError("cover.target: needs 'points' or 'shape'");
    }
    cfg.cover_horizon = plan.horizon();
    plan.functionals = {"north_pole"};  // the cover driver reads the heap directly
    return cfg;
  }

  throw ConfigError("config: unhandled kind '" + cfg.kind + "'");
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace hail
