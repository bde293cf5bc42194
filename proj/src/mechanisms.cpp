#include "liftmech/mechanisms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "liftmech/errors.hpp"

namespace liftmech {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SweepPoint make_sweep_point(const JointDistribution& joint, double eps, Measure m,
                            Mechanism mech, std::size_t candidate_count) {
  SweepPoint pt;
  pt.epsilon = eps;
  pt.candidate_count = candidate_count;
  const UtilitySummary u = mechanism_utility(joint, mech);
  const LeakageSummary l = mechanism_leakage(joint, mech);
  pt.utility = u.mi_xy;
  pt.normalized_utility = u.normalized;
  pt.leakage_mi = l.mi_sy;
  pt.max_lift = l.max_lift;
  switch (m) {
    case Measure::kKl: pt.max_measure = l.max_kl; break;
    case Measure::kL1: pt.max_measure = l.max_l1; break;
    case Measure::kChi2: pt.max_measure = l.max_chi2; break;
  }
  pt.mechanism = std::move(mech);
  return pt;
}

std::vector<std::vector<ColumnCandidate>> harvest_impl(const JointDistribution& joint,
                                                       const std::vector<double>& grid,
                                                       Measure m, bool parallel) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ConfigError("harvest grid must be strictly increasing");
  }
  if (!grid.empty() && grid.front() <= 0.0) throw ConfigError("harvest grid must be positive");

  std::vector<std::vector<ColumnCandidate>> out(grid.size());
  std::string failure;
  const auto run_one = [&](std::size_t i) {
    const VertexSet verts = enumerate_vertices_serial(measure_polytope(joint, m, grid[i]));
    auto& slot = out[i];
    slot.reserve(verts.size());
    for (const auto& v : verts) {
      ColumnCandidate cand;
      cand.stats = posterior_stats(joint, ProbVector{v.w});
      cand.w = v.w;
      slot.push_back(std::move(cand));
    }
  };
  if (parallel) {
    // Exceptions must not unwind out of the parallel region.
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
      try {
        run_one(static_cast<std::size_t>(i));
      } catch (const std::exception& e) {
#pragma omp critical
        failure = e.what();
      }
    }
    if (!failure.empty()) throw InternalError("harvest failed: " + failure);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) run_one(i);
  }
  return out;
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kKl: return "kl";
    case Measure::kL1: return "l1";
    case Measure::kChi2: return "chi2";
  }
  return "?";
}

double lift_bound(Measure m, double eps) {
  return m == Measure::kKl ? std::exp(eps) : 1.0 + eps;
}

double measure_budget(Measure m, double eps) {
  return m == Measure::kChi2 ? eps * eps : eps;
}

double measure_value(const PosteriorStats& stats, Measure m) {
  switch (m) {
    case Measure::kKl: return stats.kl;
    case Measure::kL1: return stats.l1;
    case Measure::kChi2: return stats.chi2;
  }
  return 0.0;
}

LiftPolytope measure_polytope(const JointDistribution& joint, Measure m, double eps) {
  if (m == Measure::kKl) return max_lift_polytope(joint, std::exp(eps));
  return symmetric_lift_polytope(joint, eps);
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.epsilons.empty()) throw ConfigError("empty budget grid");
  if (cfg.epsilons.front() <= 0.0) throw ConfigError("budgets must be positive");
  for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
    if (cfg.epsilons[i] <= cfg.epsilons[i - 1]) {
      throw ConfigError("budgets must be strictly increasing");
    }
  }
  if (cfg.refinement_counts.size() != cfg.epsilons.size()) {
    throw ConfigError("need one refinement count per budget");
  }
  for (int n : cfg.refinement_counts) {
    if (n < 1) throw ConfigError("refinement counts must be at least 1");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (cfg.epsilon_end <= cfg.epsilons.back()) {
    throw ConfigError("epsilon_end must exceed the last budget");
  }
}

SweepPoint optimal_lift_mechanism(const JointDistribution& joint, double eps, Measure m) {
  const auto start = Clock::now();
  const VertexSet verts = enumerate_vertices(measure_polytope(joint, m, eps));
  std::vector<std::vector<double>> cands;
  cands.reserve(verts.size());
  for (const auto& v : verts) cands.push_back(v.w);

  const MixtureLp lp = make_mixture_lp(std::move(cands), joint.p_x().v);
  const std::vector<double> q = solve_mixture(lp);
  SweepPoint pt = make_sweep_point(joint, eps, m, extract_mechanism(q, lp), lp.candidates.size());
  pt.wall_time_ms = elapsed_ms(start);
  return pt;
}

std::vector<std::vector<ColumnCandidate>> harvest_candidates(
    const JointDistribution& joint, const std::vector<double>& grid, Measure m) {
  return harvest_impl(joint, grid, m, true);
}

std::vector<std::vector<ColumnCandidate>> harvest_candidates_serial(
    const JointDistribution& joint, const std::vector<double>& grid, Measure m) {
  return harvest_impl(joint, grid, m, false);
}

std::vector<ColumnCandidate> filter_band(const std::vector<ColumnCandidate>& candidates,
                                         Measure m, double eps, double delta) {
  const double budget = measure_budget(m, eps);
  const double lo = (1.0 - delta) * budget - 1e-12;
  const double hi = budget + 1e-12;
  std::vector<ColumnCandidate> kept;
  for (const auto& cand : candidates) {
    const double v = measure_value(cand.stats, m);
    if (v >= lo && v <= hi) kept.push_back(cand);
  }
  return kept;
}

std::vector<SweepPoint> band_search_sweep(const JointDistribution& joint, Measure m,
                                          const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  const std::size_t levels = cfg.epsilons.size();

  // One refinement ladder per grid segment; the last segment runs up to
  // epsilon_end. The ladder is harvested once and shared by every budget.
  std::vector<std::vector<double>> ladder(levels);
  std::vector<double> flat;
  std::vector<std::size_t> seg_begin(levels + 1, 0);
  for (std::size_t i = 0; i < levels; ++i) {
    const double lo = cfg.epsilons[i];
    const double hi = i + 1 < levels ? cfg.epsilons[i + 1] : cfg.epsilon_end;
    const int n = cfg.refinement_counts[i];
    for (int k = 0; k < n; ++k) {
      ladder[i].push_back(lo + static_cast<double>(k) * (hi - lo) / static_cast<double>(n));
    }
    seg_begin[i] = flat.size();
    flat.insert(flat.end(), ladder[i].begin(), ladder[i].end());
  }
  seg_begin[levels] = flat.size();

  const auto harvested = harvest_candidates(joint, flat, m);

  std::vector<SweepPoint> seeds;
  seeds.reserve(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    seeds.push_back(optimal_lift_mechanism(joint, cfg.epsilons[i], m));
  }

  std::vector<SweepPoint> out;
  out.reserve(levels);
  std::vector<std::vector<double>> carried;
  for (std::size_t i = 0; i < levels; ++i) {
    const auto start = Clock::now();
    const double eps = cfg.epsilons[i];
    const double budget = measure_budget(m, eps);
    const double lo = (1.0 - cfg.delta) * budget - 1e-12;
    const double hi = budget + 1e-12;

    std::vector<std::vector<double>> cands = seeds[i].mechanism.columns;
    cands.insert(cands.end(), carried.begin(), carried.end());
    for (std::size_t pt = seg_begin[i]; pt < flat.size(); ++pt) {
      for (const auto& cand : harvested[pt]) {
        const double v = measure_value(cand.stats, m);
        if (v >= lo && v <= hi) cands.push_back(cand.w);
      }
    }

    const MixtureLp lp = make_mixture_lp(std::move(cands), joint.p_x().v);
    const std::vector<double> q = solve_mixture(lp);
    SweepPoint point = make_sweep_point(joint, eps, m, extract_mechanism(q, lp), lp.candidates.size());
    point.wall_time_ms = elapsed_ms(start);
    carried = point.mechanism.columns;
    out.push_back(std::move(point));
  }
  return out;
}

JointDistribution example1_joint() {
  return validate_joint({{0.25 * 0.25, 0.4 * 0.75}, {0.75 * 0.25, 0.6 * 0.75}});
}

Mechanism example1_mechanism(double eps) {
  if (!(eps > 0.0 && eps <= 0.07)) {
    throw OutOfRangeError("closed form is valid for 0 < eps <= 0.07, got " + std::to_string(eps));
  }
  const double shift = 3.2048 * eps;
  Mechanism mech;
  mech.p_y = {0.5, 0.5};
  mech.columns = {{0.25 - shift, 0.75 + shift}, {0.25 + shift, 0.75 - shift}};
  return mech;
}

}  // namespace liftmech
