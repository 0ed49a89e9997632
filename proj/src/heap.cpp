#include "hail/heap.hpp"

#include <algorithm>
#include "hail/text.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hail {

StoneGrid::StoneGrid(int dim, double cell_size) : dim_(dim), cell_(cell_size) {
  if (!(cell_size > 0)) cell_ = 1.0;
}

std::int64_t StoneGrid::coord(double x) const {
  double c = std::floor(x / cell_);
  // Clamp to the packable range; extreme cells only blur the broad phase.
  return std::clamp(c, -1048575.0, 1048575.0);
}

std::uint64_t StoneGrid::key(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
  auto pack = [](std::int64_t v) { return static_cast<std::uint64_t>(v + 1048576) & 0x1FFFFF; };
  return pack(ix) | (pack(iy) << 21) | (pack(iz) << 42);
}

void StoneGrid::insert(std::uint32_t id, const Shape& fp) {
  std::int64_t lo[kMaxDim] = {0, 0, 0}, hi[kMaxDim] = {0, 0, 0};
  for (int i = 0; i < dim_; ++i) {
    lo[i] = coord(fp.bbox_lo(i) - kTol);
    hi[i] = coord(fp.bbox_hi(i) + kTol);
  }
  for (std::int64_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::int64_t iy = lo[1]; iy <= hi[1]; ++iy)
      for (std::int64_t iz = lo[2]; iz <= hi[2]; ++iz) cells_[key(ix, iy, iz)].push_back(id);
}

void StoneGrid::candidates(const Shape& query, std::vector<std::uint32_t>& out) const {
  out.clear();
  std::int64_t lo[kMaxDim] = {0, 0, 0}, hi[kMaxDim] = {0, 0, 0};
  for (int i = 0; i < dim_; ++i) {
    lo[i] = coord(query.bbox_lo(i) - kTol);
    hi[i] = coord(query.bbox_hi(i) + kTol);
  }
  for (std::int64_t ix = lo[0]; ix <= hi[0]; ++ix)
    for (std::int64_t iy = lo[1]; iy <= hi[1]; ++iy)
      for (std::int64_t iz = lo[2]; iz <= hi[2]; ++iz) {
        auto it = cells_.find(key(ix, iy, iz));
        if (it == cells_.end()) continue;
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

HeapState::HeapState(Ground ground, Window window, double cell_size_hint)
    : ground_(std::move(ground)),
      window_(std::move(window)),
      grid_(window_.dim(), cell_size_hint) {
  if (ground_.d != window_.dim()) throw std::invalid_argument("HeapState: dimension mismatch");
}

HeapState HeapState::assemble(Ground ground, Window window, std::vector<PlacedStone> placed,
                              std::vector<EventRecord> log) {
  HeapState s(std::move(ground), std::move(window), 1.0);
  s.placed_ = std::move(placed);
  s.log_ = std::move(log);
  for (std::uint32_t id = 0; id < s.placed_.size(); ++id)
    s.grid_.insert(id, s.placed_[id].footprint);
  if (!s.log_.empty()) s.clock_ = s.log_.back().time;
  return s;
}

StepOutcome HeapState::step(const Arrival& a) {
  if (a.time < clock_ - kTol) throw std::invalid_argument("HeapState::step: out-of-order arrival");
  clock_ = std::max(clock_, a.time);
  const Shape fp = a.footprint();

  const bool grounded = intersects(ground_, fp);
  double sup = grounded ? 0.0 : -kInf;
  std::vector<std::uint32_t> parents;
  grid_.candidates(fp, scratch_);
  for (std::uint32_t id : scratch_) {
    if (intersects(placed_[id].footprint, fp)) {
      parents.push_back(id);
      sup = std::max(sup, placed_[id].top);
    }
  }

  EventRecord ev;
  ev.time = a.time;
  ev.arrival_index = static_cast<std::uint64_t>(log_.size());

  if (sup == -kInf) {
    ev.kind = EventKind::Discarded;
    log_.push_back(ev);
    return {};
  }

  PlacedStone stone;
  stone.position = a.position;
  stone.time = a.time;
  stone.footprint = fp;
  stone.sigma = a.mark.sigma;
  stone.top = sup + a.mark.sigma;
  stone.grounded = grounded;
  stone.parents = std::move(parents);
  stone.arrival_index = ev.arrival_index;
  const auto id = static_cast<std::uint32_t>(placed_.size());
  placed_.push_back(std::move(stone));
  grid_.insert(id, fp);

  ev.kind = EventKind::Placed;
  ev.stone_id = static_cast<std::int32_t>(id);
  log_.push_back(ev);
  return {true, ev.stone_id, placed_.back().top};
}

double HeapState::height(const Vec& x) const {
  double h = contains_point(ground_, x) ? 0.0 : -kInf;
  grid_.candidates(Shape::ball(x, 1e-9), scratch_);
  for (std::uint32_t id : scratch_)
    if (contains_point(placed_[id].footprint, x)) h = std::max(h, placed_[id].top);
  return h;
}

double HeapState::height_at_time(const Vec& x, double t) const {
  double h = contains_point(ground_, x) ? 0.0 : -kInf;
  for (const PlacedStone& s : placed_) {
    if (s.time > t + kTol) break;  // placed_ is time-ordered
    if (contains_point(s.footprint, x)) h = std::max(h, s.top);
  }
  return h;
}

double HeapState::sup_height() const {
  double h = 0.0;
  for (const PlacedStone& s : placed_) h = std::max(h, s.top);
  return h;
}

std::vector<Shape> HeapState::placed_footprints() const {
  std::vector<Shape> out;
  out.reserve(placed_.size());
  for (const PlacedStone& s : placed_) out.push_back(s.footprint);
  return out;
}

double median_footprint_diameter(const Realization& r) {
  if (r.arrivals.empty()) return 1.0;
  std::vector<double> diams;
  diams.reserve(r.arrivals.size());
  for (const Arrival& a : r.arrivals) diams.push_back(a.mark.shape.diameter());
  auto mid = diams.begin() + diams.size() / 2;
  std::nth_element(diams.begin(), mid, diams.end());
  return std::max(*mid, 1e-6);
}

HeapState run(const Realization& r, const Ground& ground) {
  HeapState state(ground, r.window, median_footprint_diameter(r));
  for (const Arrival& a : r.arrivals) state.step(a);
  return state;
}

HeapState brute_force_run(const Realization& r, const Ground& ground) {
  // Index-free oracle: every arrival is tested against every placed stone.
  std::vector<PlacedStone> placed;
  std::vector<EventRecord> log;
  for (const Arrival& a : r.arrivals) {
    const Shape fp = a.footprint();
    const bool grounded = intersects(ground, fp);
    double sup = grounded ? 0.0 : -kInf;
    std::vector<std::uint32_t> parents;
    for (std::uint32_t id = 0; id < placed.size(); ++id) {
      if (intersects(placed[id].footprint, fp)) {
        parents.push_back(id);
        sup = std::max(sup, placed[id].top);
      }
    }
    EventRecord ev;
    ev.time = a.time;
    ev.arrival_index = static_cast<std::uint64_t>(log.size());
    if (sup == -kInf) {
      ev.kind = EventKind::Discarded;
      log.push_back(ev);
      continue;
    }
    PlacedStone stone;
    stone.position = a.position;
    stone.time = a.time;
    stone.footprint = fp;
    stone.sigma = a.mark.sigma;
    stone.top = sup + a.mark.sigma;
    stone.grounded = grounded;
    stone.parents = std::move(parents);
    stone.arrival_index = ev.arrival_index;
    ev.kind = EventKind::Placed;
    ev.stone_id = static_cast<std::int32_t>(placed.size());
    placed.push_back(std::move(stone));
    log.push_back(ev);
  }
  return HeapState::assemble(ground, r.window, std::move(placed), std::move(log));
}

std::vector<std::uint32_t> ancestry(const HeapState& state, std::uint32_t stone_id) {
  if (stone_id >= state.placed().size()) throw std::out_of_range("ancestry: unknown stone id");
  std::vector<bool> seen(state.placed().size(), false);
  std::vector<std::uint32_t> stack = state.placed()[stone_id].parents;
  std::vector<std::uint32_t> out;
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    out.push_back(id);
    const auto& ps = state.placed()[id].parents;
    stack.insert(stack.end(), ps.begin(), ps.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_outcome(const HeapState& a, const HeapState& b, double tol) {
  if (a.placed().size() != b.placed().size()) return false;
  if (a.event_log().size() != b.event_log().size()) return false;
  for (std::size_t i = 0; i < a.event_log().size(); ++i) {
    const EventRecord &ea = a.event_log()[i], &eb = b.event_log()[i];
    if (ea.kind != eb.kind || ea.stone_id != eb.stone_id) return false;
  }
  for (std::size_t i = 0; i < a.placed().size(); ++i) {
    const PlacedStone &sa = a.placed()[i], &sb = b.placed()[i];
    if (std::abs(sa.top - sb.top) > tol) return false;
    if (sa.parents != sb.parents) return false;
  }
  return true;
}

void write_heap_dump(std::ostream& os, const HeapState& state) {
  std::string buf;
  buf += "# hail-heap v1\n";
  buf += "dim " + std::to_string(state.window().dim()) + "\n";
  buf += "placed " + std::to_string(state.placed().size()) + "\n";
  for (std::size_t id = 0; id < state.placed().size(); ++id) {
    const PlacedStone& s = state.placed()[id];
    buf += std::to_string(id);
    buf += ' ';
    append_double(buf, s.time);
    buf += ' ';
    append_double(buf, s.top);
    if (s.footprint.kind == ShapeKind::Ball) {
      buf += " ball";
      for (int i = 0; i < s.footprint.dim(); ++i) {
        buf += ' ';
        append_double(buf, s.footprint.center[i]);
      }
      buf += ' ';
      append_double(buf, s.footprint.radius);
    } else {
      buf += " box";
      for (int i = 0; i < s.footprint.dim(); ++i) {
        buf += ' ';
        append_double(buf, s.footprint.center[i]);
      }
      for (int i = 0; i < s.footprint.dim(); ++i) {
        buf += ' ';
        append_double(buf, s.footprint.half_widths[i]);
      }
    }
    for (std::uint32_t p : s.parents) buf += ' ' + std::to_string(p);
    buf += '\n';
  }
  std::size_t discarded = 0;
  for (const EventRecord& e : state.event_log())
    if (e.kind == EventKind::Discarded) ++discarded;
  buf += "discarded " + std::to_string(discarded) + "\n";
  for (const EventRecord& e : state.event_log()) {
    if (e.kind != EventKind::Discarded) continue;
    append_double(buf, e.time);
    buf += ' ' + std::to_string(e.arrival_index) + '\n';
  }
  os << buf;
}

}  // namespace hail
