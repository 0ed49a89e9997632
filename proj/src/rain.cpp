#include "hail/rain.hpp"

#include <algorithm>
#include "hail/text.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hail {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("realization parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

Window::Window(const Vec& c, const Vec& hw, double T) : center(c), half_widths(hw), horizon(T) {
  if (c.d != hw.d) throw std::invalid_argument("Window: dimension mismatch");
  for (int i = 0; i < hw.d; ++i)
    if (!(hw[i] > 0)) throw std::invalid_argument("Window: half-widths must be > 0");
  if (!(T > 0)) throw std::invalid_argument("Window: horizon must be > 0");
}

Window Window::symmetric(int d, double half_width, double horizon) {
  Vec hw(d);
  for (int i = 0; i < d; ++i) hw[i] = half_width;
  return Window(Vec::zero(d), hw, horizon);
}

double Window::spatial_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= 2.0 * half_widths[i];
  return v;
}

Window Window::scaled(double factor) const {
  Window w = *this;
  for (int i = 0; i < dim(); ++i) w.half_widths[i] *= factor;
  return w;
}

bool arrival_order(const Arrival& a, const Arrival& b) {
  if (a.time != b.time) return a.time < b.time;
  return a.position.lex_less(b.position);
}

Realization generate(std::uint64_t seed, double lambda, const Window& w, const MarkSpec& spec) {
  if (lambda < 0) throw std::invalid_argument("generate: lambda must be >= 0");
  require_light_tail(spec, w.dim());
  Realization r;
  r.d = w.dim();
  r.lambda = lambda;
  r.seed = seed;
  r.window = w;
  RngStream rng(seed);
  std::int64_t n = poisson_count(rng, lambda * w.volume());
  r.arrivals.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    Arrival a;
    a.position = Vec(r.d);
    for (int i = 0; i < r.d; ++i)
      a.position[i] = uniform(rng, w.center[i] - w.half_widths[i], w.center[i] + w.half_widths[i]);
    a.time = uniform(rng, 0.0, w.horizon);
    a.mark = sample_mark(rng, spec, r.d);
    r.arrivals.push_back(std::move(a));
  }
  std::sort(r.arrivals.begin(), r.arrivals.end(), arrival_order);
  return r;
}

Realization shift(const Realization& r, const Vec& x0, double t0) {
  Realization out;
  out.d = r.d;
  out.lambda = r.lambda;
  out.seed = r.seed;
  out.window = r.window;
  out.window.center = r.window.center - x0;
  out.window.horizon = std::max(r.window.horizon - t0, kTol);
  for (const Arrival& a : r.arrivals) {
    double t = a.time - t0;
    if (t < 0) continue;
    Arrival b = a;
    b.position = a.position - x0;
    b.time = t;
    out.arrivals.push_back(std::move(b));
  }
  return out;
}

Realization reverse(const Realization& r, double t) {
  if (t > r.window.horizon + kTol) throw std::invalid_argument("reverse: t exceeds horizon");
  Realization out;
  out.d = r.d;
  out.lambda = r.lambda;
  out.seed = r.seed;
  out.window = r.window;
  out.window.horizon = t;
  for (const Arrival& a : r.arrivals) {
    if (a.time > t) continue;
    Arrival b = a;
    b.time = t - a.time;
    out.arrivals.push_back(std::move(b));
  }
  std::sort(out.arrivals.begin(), out.arrivals.end(), arrival_order);
  return out;
}

Realization truncated(const Realization& r, double t) {
  Realization out = r;
  out.arrivals.clear();
  for (const Arrival& a : r.arrivals)
    if (a.time < t) out.arrivals.push_back(a);
  return out;
}

MarginReport containment_margin(const std::vector<Shape>& placed_footprints, const Window& w,
                                double r_cut) {
  MarginReport rep;
  for (const Shape& s : placed_footprints)
    rep.margin = std::min(rep.margin, margin_to_box_boundary(s, w.center, w.half_widths));
  rep.contaminated = rep.margin < r_cut;
  return rep;
}

void save_realization(std::ostream& os, const Realization& r) {
  std::string buf;
  buf += "# hail-realization v1\n";
  buf += "dim " + std::to_string(r.d) + "\n";
  buf += "lambda ";
  append_double(buf, r.lambda);
  buf += "\nseed " + std::to_string(r.seed) + "\n";
  buf += "window";
  for (int i = 0; i < r.d; ++i) {
    buf += ' ';
    append_double(buf, r.window.center[i]);
  }
  for (int i = 0; i < r.d; ++i) {
    buf += ' ';
    append_double(buf, r.window.half_widths[i]);
  }
  buf += ' ';
  append_double(buf, r.window.horizon);
  buf += "\narrivals " + std::to_string(r.arrivals.size()) + "\n";
  for (const Arrival& a : r.arrivals) {
    append_double(buf, a.time);
    for (int i = 0; i < r.d; ++i) {
      buf += ' ';
      append_double(buf, a.position[i]);
    }
    if (a.mark.shape.kind == ShapeKind::Ball) {
      buf += " ball ";
      append_double(buf, a.mark.shape.radius);
    } else {
      buf += " box";
      for (int i = 0; i < r.d; ++i) {
        buf += ' ';
        append_double(buf, a.mark.shape.half_widths[i]);
      }
    }
    buf += ' ';
    append_double(buf, a.mark.sigma);
    buf += '\n';
  }
  os << buf;
}

Realization load_realization(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  auto expect = [&](const std::string& key) -> std::istringstream {
    if (!next_line()) parse_fail(lineno + 1, "expected '" + key + "'");
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok != key) parse_fail(lineno, "expected '" + key + "', got '" + tok + "'");
    return ss;
  };

  Realization r;
  {
    auto ss = expect("dim");
    if (!(ss >> r.d) || r.d < 1 || r.d > kMaxDim) parse_fail(lineno, "bad dimension");
  }
  {
    auto ss = expect("lambda");
    if (!(ss >> r.lambda) || r.lambda < 0) parse_fail(lineno, "bad lambda");
  }
  {
    auto ss = expect("seed");
    if (!(ss >> r.seed)) parse_fail(lineno, "bad seed");
  }
  {
    auto ss = expect("window");
    Vec c(r.d), hw(r.d);
    double T;
    for (int i = 0; i < r.d; ++i)
      if (!(ss >> c[i])) parse_fail(lineno, "bad window center");
    for (int i = 0; i < r.d; ++i)
      if (!(ss >> hw[i])) parse_fail(lineno, "bad window half-widths");
    if (!(ss >> T)) parse_fail(lineno, "bad horizon");
    r.window = Window(c, hw, T);
  }
  std::size_t n = 0;
  {
    auto ss = expect("arrivals");
    if (!(ss >> n)) parse_fail(lineno, "bad arrival count");
  }
  r.arrivals.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!next_line()) parse_fail(lineno + 1, "missing arrival line");
    std::istringstream ss(line);
    Arrival a;
    a.position = Vec(r.d);
    if (!(ss >> a.time)) parse_fail(lineno, "bad arrival time");
    for (int i = 0; i < r.d; ++i)
      if (!(ss >> a.position[i])) parse_fail(lineno, "bad arrival position");
    std::string kind;
    if (!(ss >> kind)) parse_fail(lineno, "missing shape kind");
    if (kind == "ball") {
      double radius;
      if (!(ss >> radius)) parse_fail(lineno, "bad ball radius");
      a.mark.shape = Shape::ball(Vec::zero(r.d), radius);
    } else if (kind == "box") {
      Vec hw(r.d);
      for (int i = 0; i < r.d; ++i)
        if (!(ss >> hw[i])) parse_fail(lineno, "bad box half-widths");
      a.mark.shape = Shape::box(Vec::zero(r.d), hw);
    } else {
      parse_fail(lineno, "unknown shape kind '" + kind + "'");
    }
    if (!(ss >> a.mark.sigma) || !(a.mark.sigma > 0)) parse_fail(lineno, "bad sigma");
    if (a.time < 0 || a.time > r.window.horizon + kTol) parse_fail(lineno, "time outside window");
    r.arrivals.push_back(std::move(a));
  }
  if (!std::is_sorted(r.arrivals.begin(), r.arrivals.end(), arrival_order))
    std::sort(r.arrivals.begin(), r.arrivals.end(), arrival_order);
  return r;
}

}  // namespace hail
