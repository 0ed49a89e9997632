#pragma once

// Space-time Poisson arrivals in a finite window, plus the realization
// transformations (translation shift, time reversal) used by the
// compatibility and duality checks. Generation is deterministic per seed.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hail/geometry.hpp"
#include "hail/marks.hpp"

namespace hail {

struct Window {
  Vec center;
  Vec half_widths;
  double horizon = 1.0;  // time interval [0, horizon)

  Window() = default;
  Window(const Vec& c, const Vec& hw, double T);
  static Window symmetric(int d, double half_width, double horizon);

  int dim() const { return center.d; }
  double spatial_volume() const;
  double volume() const { return spatial_volume() * horizon; }
  Window scaled(double factor) const;  // spatial half-widths scaled, horizon kept
};

struct Arrival {
  Vec position;
  double time = 0.0;
  Mark mark;

  Shape footprint() const { return mark.shape.translated(position); }
};

// Time-ordered arrival list. Ties (probability zero; possible after
// finite-precision reversal) are broken by lexicographic position order.
struct Realization {
  int d = 1;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  Window window;
  std::vector<Arrival> arrivals;
};

bool arrival_order(const Arrival& a, const Arrival& b);

Realization generate(std::uint64_t seed, double lambda, const Window& w, const MarkSpec& spec);

// Each arrival (x,t) maps to (x - x0, t - t0); mapped times < 0 are dropped.
Realization shift(const Realization& r, const Vec& x0, double t0);

// Arrivals with time in [0,t] map to (x, t - time) and are re-sorted.
Realization reverse(const Realization& r, double t);

// Arrivals with time < t (strict; matches the height recursion's [0,t) window).
Realization truncated(const Realization& r, double t);

struct MarginReport {
  double margin = kInf;  // min distance from a placed footprint to the window boundary
  bool contaminated = false;
};

MarginReport containment_margin(const std::vector<Shape>& placed_footprints, const Window& w,
                                double r_cut);

void save_realization(std::ostream& os, const Realization& r);
Realization load_realization(std::istream& is);  // throws std::runtime_error with line number

}  // namespace hail
