#include "hail/estimators.hpp"

#include "hail/text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace hail {

namespace {

struct ReplicateOutcome {
  std::vector<std::vector<double>> values;  // [functional][checkpoint]
  bool contaminated = false;
  bool excluded = false;
  std::exception_ptr error;
};

struct MeanSd {
  double mean = 0.0, sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return r;
}

// Runs replicate bodies 0..n-1 on `jobs` threads. Results land in index order;
// the schedule cannot affect them.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<std::vector<double>> eval_replicate(const ExperimentPlan& plan,
                                                const std::vector<FunctionalSpec>& fns,
                                                std::uint64_t seed, const Window& window,
                                                double r_cut, bool& contaminated) {
  Realization r = generate(seed, plan.lambda, window, plan.marks);
  HeapState state(plan.ground, window, median_footprint_diameter(r));
  std::vector<std::vector<double>> values(fns.size(),
                                          std::vector<double>(plan.checkpoints.size(), 0.0));
  std::size_t ai = 0;
  for (std::size_t k = 0; k < plan.checkpoints.size(); ++k) {
    const double t = plan.checkpoints[k];
    while (ai < r.arrivals.size() && r.arrivals[ai].time <= t) state.step(r.arrivals[ai++]);
    for (std::size_t f = 0; f < fns.size(); ++f) values[f][k] = fns[f].evaluate(state);
  }
  while (ai < r.arrivals.size()) state.step(r.arrivals[ai++]);
  contaminated = containment_margin(state.placed_footprints(), window, r_cut).contaminated;
  return values;
}

}  // namespace

void ExperimentPlan::validate() const {
  Vec::check_dim(d);
  if (lambda < 0) throw std::invalid_argument("plan: lambda must be >= 0");
  if (replicates < 2) throw std::invalid_argument("plan: need at least 2 replicates");
  if (functionals.empty()) throw std::invalid_argument("plan: no functionals");
  if (checkpoints.empty()) throw std::invalid_argument("plan: no checkpoints");
  double prev = 0;
  for (double t : checkpoints) {
    if (!(t > prev)) throw std::invalid_argument("plan: checkpoints must be positive increasing");
    prev = t;
  }
  if (ground.d != d) throw std::invalid_argument("plan: ground dimension mismatch");
  require_light_tail(marks, d);
}

RateEstimate aggregate_rate(const std::string& key,
                            const std::vector<std::vector<double>>& values,
                            const std::vector<double>& checkpoints, RateMethod method) {
  RateEstimate est;
  est.functional = key;
  est.method = method;
  est.n_replicates = static_cast<int>(values.size());
  const std::size_t m = checkpoints.size();

  std::vector<double> slopes;
  slopes.reserve(values.size());
  for (const auto& v : values) {
    double s;
    if (m == 1) {
      s = v[0] / checkpoints[0];
    } else if (method == RateMethod::IncrementMean) {
      s = (v[m - 1] - v[0]) / (checkpoints[m - 1] - checkpoints[0]);
    } else {
      double num = 0, den = 0;
      for (std::size_t k = 0; k < m; ++k) {
        num += checkpoints[k] * v[k];
        den += checkpoints[k] * checkpoints[k];
      }
      s = num / den;
    }
    slopes.push_back(s);
  }
  MeanSd sl = mean_sd(slopes);
  est.slope = sl.mean;
  est.std_error = slopes.size() > 1 ? sl.sd / std::sqrt(double(slopes.size())) : 0.0;

  est.checkpoint_means.assign(m, 0.0);
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> col;
    col.reserve(values.size());
    for (const auto& v : values) col.push_back(v[k]);
    MeanSd ms = mean_sd(col);
    est.checkpoint_means[k] = ms.mean;
    double rate_k = ms.mean / checkpoints[k];
    if (k == 0 || rate_k > est.sup_mean_rate) {
      est.sup_mean_rate = rate_k;
      est.sup_mean_std_error =
          col.size() > 1 ? ms.sd / std::sqrt(double(col.size())) / checkpoints[k] : 0.0;
      best_k = k;
    }
  }
  (void)best_k;
  return est;
}

ResolvedWindow resolve_window(const ExperimentPlan& plan) {
  ResolvedWindow out;
  double q = diameter_quantile(plan.marks, plan.d, 0.9999);
  double ground_extent = extent_diameter(plan.ground);
  out.r_cut = plan.window.r_cut ? *plan.window.r_cut
                                : (plan.ground.is_bounded() ? q + ground_extent : kInf);
  double half;
  if (plan.window.half_width) {
    half = *plan.window.half_width;
  } else {
    if (!plan.ground.is_bounded())
      throw std::invalid_argument(
          "plan: unbounded ground needs an explicit window half-width");
    double reach = 0;  // farthest ground point from the origin, per axis
    switch (plan.ground.kind) {
      case GroundKind::PointSet:
        for (const Vec& p : plan.ground.points)
          for (int i = 0; i < plan.d; ++i) reach = std::max(reach, std::abs(p[i]));
        break;
      default:
        for (int i = 0; i < plan.d; ++i)
          reach = std::max(reach, std::abs(plan.ground.shape.center[i]) +
                                      plan.ground.shape.extent(i));
    }
    // Heuristic spread allowance; the contamination flag is the real guard.
    double spread = plan.lambda * std::pow(2.0 * q, plan.d) * q;
    half = reach + (out.r_cut == kInf ? q : out.r_cut) + spread * plan.horizon() + q;
  }
  out.window = Window::symmetric(plan.d, half, plan.horizon());
  return out;
}

RateRun rate_run(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<FunctionalSpec> fns;
  fns.reserve(plan.functionals.size());
  for (const std::string& key : plan.functionals) fns.push_back(parse_functional(key, plan.d));
  const ResolvedWindow rw = resolve_window(plan);

  std::vector<ReplicateOutcome> outcomes(plan.replicates);
  parallel_for(plan.replicates, plan.jobs, [&](int i) {
    ReplicateOutcome& out = outcomes[i];
    try {
      const std::uint64_t seed = derive_seed(plan.base_seed, static_cast<std::uint64_t>(i));
      bool contaminated = false;
      auto values = eval_replicate(plan, fns, seed, rw.window, rw.r_cut, contaminated);
      if (contaminated && plan.window.censoring == Censoring::RerunThenExclude) {
        values = eval_replicate(plan, fns, seed, rw.window.scaled(2.0), rw.r_cut, contaminated);
      }
      out.values = std::move(values);
      out.contaminated = contaminated;
      out.excluded = contaminated && plan.window.censoring != Censoring::Keep;
    } catch (...) {
      out.error = std::current_exception();
    }
  });
  for (const ReplicateOutcome& out : outcomes)
    if (out.error) std::rethrow_exception(out.error);

  int flagged = 0, excluded = 0;
  for (const ReplicateOutcome& out : outcomes) {
    flagged += out.contaminated ? 1 : 0;
    excluded += out.excluded ? 1 : 0;
  }
  if (excluded == plan.replicates)
    throw AllContaminatedError("rate: every replicate was contaminated; enlarge the window");

  RateRun run;
  run.excluded.resize(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) run.excluded[i] = outcomes[i].excluded ? 1 : 0;
  run.values.resize(fns.size());
  for (std::size_t f = 0; f < fns.size(); ++f) {
    std::vector<std::vector<double>> included;
    included.reserve(outcomes.size());
    run.values[f].reserve(outcomes.size());
    for (const ReplicateOutcome& out : outcomes) {
      run.values[f].push_back(out.values[f]);
      if (!out.excluded) included.push_back(out.values[f]);
    }
    RateEstimate est = aggregate_rate(plan.functionals[f], included, plan.checkpoints, plan.method);
    est.n_excluded = excluded;
    est.contamination_rate = static_cast<double>(flagged) / plan.replicates;
    run.estimates.push_back(std::move(est));
  }
  return run;
}

std::vector<RateEstimate> rate(const ExperimentPlan& plan) { return rate_run(plan).estimates; }

double sup_mean_rate(const ExperimentPlan& plan) {
  auto ests = rate(plan);
  if (ests.size() != 1)
    throw std::invalid_argument("sup_mean_rate: expected a single-functional plan");
  return ests[0].sup_mean_rate;
}

std::string ray_key(const Vec& w, double phi) {
  std::string key = "ray:w=";
  for (int i = 0; i < w.d; ++i) {
    if (i) key += ',';
    append_double(key, w[i]);
  }
  key += ";phi=";
  append_double(key, phi);
  return key;
}

RateEstimate directional_rate(const ExperimentPlan& plan, const Vec& w, double phi) {
  ExperimentPlan p = plan;
  p.functionals = {ray_key(w, phi)};
  return rate(p)[0];
}

ExperimentPlan phase_plan(const ExperimentPlan& base, const Vec& w,
                          const std::vector<double>& phi_grid) {
  if (phi_grid.empty()) throw std::invalid_argument("phase_angle: empty grid");
  ExperimentPlan p = base;
  p.functionals.clear();
  for (double phi : phi_grid) p.functionals.push_back(ray_key(w, phi));
  return p;
}

PhaseResult phase_bracket(const std::vector<RateEstimate>& ests,
                          const std::vector<double>& phi_grid, double significance) {
  PhaseResult res;
  res.cells.resize(phi_grid.size());
  int first_positive = -1;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    res.cells[i].phi = phi_grid[i];
    res.cells[i].estimate = ests[i];
    res.cells[i].positive = ests[i].slope > significance * ests[i].std_error;
    if (res.cells[i].positive && first_positive < 0) first_positive = static_cast<int>(i);
    if (!res.cells[i].positive && first_positive >= 0) res.monotone = false;
  }
  if (first_positive < 0) {
    res.phi_lo = res.phi_hi = phi_grid.back();
    res.diagnostic = "no statistically positive cell; bracket reported at the upper endpoint";
  } else if (first_positive == 0) {
    res.phi_lo = res.phi_hi = phi_grid.front();
    res.diagnostic = "positive already at the smallest angle; bracket touches the lower endpoint";
  } else {
    res.phi_lo = phi_grid[first_positive - 1];
    res.phi_hi = phi_grid[first_positive];
    res.transition_found = true;
  }
  return res;
}

PhaseResult phase_angle(const ExperimentPlan& plan, const Vec& w,
                        const std::vector<double>& phi_grid, double significance) {
  return phase_bracket(rate(phase_plan(plan, w, phi_grid)), phi_grid, significance);
}

double ball_volume(int d, double radius) {
  switch (d) {
    case 1:
      return 2.0 * radius;
    case 2:
      return std::acos(-1.0) * radius * radius;
    case 3:
      return 4.0 / 3.0 * std::acos(-1.0) * radius * radius * radius;
    default:
      throw std::invalid_argument("ball_volume: unsupported dimension");
  }
}

HitProbabilityReport hit_probability_check(int d, double lambda, double r, const Vec& v,
                                           int replicates, std::uint64_t seed, int jobs) {
  HitProbabilityReport rep;
  rep.replicates = replicates;
  rep.bound = 1.0 - std::exp(-lambda * ball_volume(d, r / 2.0));
  const Window window = Window::symmetric(d, 8.0 * r, 1.0);
  const MarkSpec spec = MarkSpec::fixed_ball(r, 1.0);
  const Ground ground = Ground::origin(d);
  const GaugeSpec gauge = GaugeSpec::point(v);

  std::vector<std::uint8_t> hits(replicates, 0);
  parallel_for(replicates, jobs, [&](int i) {
    Realization real = generate(derive_seed(seed, static_cast<std::uint64_t>(i)), lambda, window, spec);
    HeapState state = run(real, ground);
    hits[i] = gauge_distance(state, gauge) > r / 2.0 ? 1 : 0;
  });
  int n_hit = 0;
  for (auto h : hits) n_hit += h;
  rep.estimate = static_cast<double>(n_hit) / replicates;
  rep.std_error = std::sqrt(std::max(rep.estimate * (1.0 - rep.estimate), 1e-12) / replicates);
  rep.pass = rep.estimate >= rep.bound - 4.0 * rep.std_error;
  return rep;
}

}  // namespace hail
