#pragma once

// The stacking dynamics: arrivals are applied in time order; a stone whose
// footprint touches the ground or an earlier placed stone rests on top of the
// tallest thing under its footprint (new top = sigma + sup of the current
// height over the footprint), everything else is served instantly and
// discarded. Heights are exact: the sup is a max over 0 (ground contact) and
// the tops of intersecting placed stones — no discretization anywhere.

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "hail/geometry.hpp"
#include "hail/rain.hpp"

namespace hail {

struct PlacedStone {
  Vec position;
  double time = 0.0;
  Shape footprint;
  double sigma = 0.0;
  double top = 0.0;
  bool grounded = false;
  std::vector<std::uint32_t> parents;  // earlier placed stones the footprint touches
  std::uint64_t arrival_index = 0;
};

enum class EventKind { Placed, Discarded };

struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::Placed;
  std::uint64_t arrival_index = 0;
  std::int32_t stone_id = -1;  // placed index, -1 when discarded
};

// Uniform hash grid over footprint bounding boxes (broad phase); candidate
// retrieval by bbox overlap, then the exact predicate.
class StoneGrid {
 public:
  StoneGrid() = default;
  StoneGrid(int dim, double cell_size);

  void insert(std::uint32_t id, const Shape& footprint);
  // Ids of stones whose bbox might overlap the query shape's bbox (deduplicated).
  void candidates(const Shape& query, std::vector<std::uint32_t>& out) const;

 private:
  int dim_ = 1;
  double cell_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;

  std::int64_t coord(double x) const;
  static std::uint64_t key(std::int64_t ix, std::int64_t iy, std::int64_t iz);
};

struct StepOutcome {
  bool placed = false;
  std::int32_t stone_id = -1;
  double top = 0.0;
};

class HeapState {
 public:
  HeapState(Ground ground, Window window, double cell_size_hint = 1.0);

  // Builds a state from already-computed parts (used by the oracle engine).
  static HeapState assemble(Ground ground, Window window, std::vector<PlacedStone> placed,
                            std::vector<EventRecord> log);

  // Applies one arrival; throws std::invalid_argument if it is out of order.
  StepOutcome step(const Arrival& a);

  // H(x) on the current state: 0 on the ground, tops of covering stones, -inf.
  double height(const Vec& x) const;
  // Same, restricted to stones placed at arrival time <= t.
  double height_at_time(const Vec& x, double t) const;

  double sup_height() const;  // max(0, max top)

  const Ground& ground() const { return ground_; }
  const Window& window() const { return window_; }
  const std::vector<PlacedStone>& placed() const { return placed_; }
  const std::vector<EventRecord>& event_log() const { return log_; }
  double clock() const { return clock_; }

  std::vector<Shape> placed_footprints() const;

 private:
  Ground ground_;
  Window window_;
  std::vector<PlacedStone> placed_;
  StoneGrid grid_;
  double clock_ = 0.0;
  std::vector<EventRecord> log_;
  mutable std::vector<std::uint32_t> scratch_;
};

// Fold of step over the realization's arrivals; cell size defaults to the
// median footprint diameter.
HeapState run(const Realization& r, const Ground& ground);

// Oracle engine: identical dynamics, no spatial index (all-pairs scan).
HeapState brute_force_run(const Realization& r, const Ground& ground);

// Transitive closure of parents. Throws std::out_of_range on an unknown id.
std::vector<std::uint32_t> ancestry(const HeapState& state, std::uint32_t stone_id);

// True when the two states have identical placement decisions, tops (within
// tol) and parent sets.
bool same_outcome(const HeapState& a, const HeapState& b, double tol = 1e-9);

double median_footprint_diameter(const Realization& r);

void write_heap_dump(std::ostream& os, const HeapState& state);

}  // namespace hail
