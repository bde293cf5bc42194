#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "liftmech/measures.hpp"
#include "liftmech/mixture.hpp"
#include "liftmech/polytope.hpp"
#include "liftmech/prob.hpp"

namespace liftmech {

/**
 * The per-output leakage measure a mechanism is budgeted against.
 *
 *   kKl:   kl(y) <= eps      lift cap e^eps, one-sided (a posterior-weighted
 *                            average of log-lift never exceeds its maximum)
 *   kL1:   l1(y) <= eps      lift in [1-eps, 1+eps]
 *   kChi2: chi2(y) <= eps^2  lift in [1-eps, 1+eps]
 *
 * For l1 and chi2 the cap must be symmetric: a one-sided cap bounds positive
 * lift deviations only, and the balancing negative deviations can push l1
 * past eps and chi2 past eps^2. With |lift - 1| <= eps both budgets follow
 * directly from the measure definitions.
 */
enum class Measure { kKl, kL1, kChi2 };

std::string_view measure_name(Measure m);

/** The lift cap placed on the harvesting polytope at level eps. */
double lift_bound(Measure m, double eps);

/** The per-output budget at level eps: eps for kl and l1, eps^2 for chi2. */
double measure_budget(Measure m, double eps);

/** The value of the active measure at a column's statistics. */
double measure_value(const PosteriorStats& stats, Measure m);

/** The harvesting polytope at level eps (one-sided for kl, symmetric else). */
LiftPolytope measure_polytope(const JointDistribution& joint, Measure m, double eps);

/** A candidate column with its cached leakage statistics. */
struct ColumnCandidate {
  std::vector<double> w;
  PosteriorStats stats;
};

/**
 * Budget grid for a sweep. refinement_counts[i] ladder points are placed in
 * [epsilons[i], epsilons[i+1]) (the final segment ends at epsilon_end).
 */
struct SweepConfig {
  std::vector<double> epsilons;
  std::vector<int> refinement_counts;
  double delta = 0.05;
  double epsilon_end = 1.0;
};

/** Throws ConfigError unless the grid is valid per the rules above. */
void validate_sweep_config(const SweepConfig& cfg);

/** One record of a sweep: the mechanism at a budget plus its metrics. */
struct SweepPoint {
  double epsilon = 0.0;
  Mechanism mechanism;
  double utility = 0.0;             // I(X;Y), nats
  double normalized_utility = 0.0;  // I(X;Y) / H(X)
  double leakage_mi = 0.0;          // I(S;Y), nats
  double max_lift = 0.0;
  double max_measure = 0.0;  // max over outputs of the active measure
  std::size_t candidate_count = 0;
  double wall_time_ms = 0.0;
};

/**
 * The utility-optimal mechanism under a hard lift cap at level eps: builds
 * the measure's polytope, enumerates its vertices, and solves the mixture
 * program over them. Optimal because H(X|Y) is concave in the columns, so an
 * optimal decomposition is supported on polytope vertices.
 */
SweepPoint optimal_lift_mechanism(const JointDistribution& joint, double eps, Measure m);

/**
 * Vertex sets of the measure's polytope at each grid level, with cached
 * statistics. Grid points are processed in parallel (OpenMP); the serial
 * variant is the reference kept for testing. Output order matches the grid.
 */
std::vector<std::vector<ColumnCandidate>> harvest_candidates(
    const JointDistribution& joint, const std::vector<double>& grid, Measure m);
std::vector<std::vector<ColumnCandidate>> harvest_candidates_serial(
    const JointDistribution& joint, const std::vector<double>& grid, Measure m);

/**
 * Keeps the candidates whose active measure lies in
 * [(1 - delta) * budget, budget] at level eps. Columns near the budget are
 * extreme points of the relaxed feasible region, which is what makes them
 * valuable mixture candidates below their harvesting level.
 */
std::vector<ColumnCandidate> filter_band(const std::vector<ColumnCandidate>& candidates,
                                         Measure m, double eps, double delta);

/**
 * Budget sweep with band-filtered vertex harvesting.
 *
 * A ladder of refinement levels is laid over each grid segment and the
 * polytope vertices at every ladder level are harvested once. At each budget
 * eps_i the candidate set is the union of
 *
 *   - the columns of the optimal lift-capped mechanism at eps_i,
 *   - the columns of the previous budget's solution (so utility can only
 *     grow along the sweep), and
 *   - every harvested vertex from ladder levels at or above eps_i whose
 *     measure falls in the delta-band under the budget,
 *
 * after deduplication; the mixture program then picks the entropy-minimizing
 * decomposition of P_X. Every candidate's measure is within the budget (the
 * seeds by the cap's guarantee, the harvested columns by the band's upper
 * edge), so each reported mechanism satisfies max_measure <= budget and, for
 * kKl, I(S;Y) <= eps.
 */
std::vector<SweepPoint> band_search_sweep(const JointDistribution& joint, Measure m,
                                          const SweepConfig& cfg);

/**
 * The fixed 2x2 validation instance: channel rows {0.25, 0.4} and
 * {0.75, 0.6} with P_X = [0.25, 0.75], so P_S = [0.3625, 0.6375].
 */
JointDistribution example1_joint();

/**
 * The closed-form two-output chi-square mechanism for the validation
 * instance: columns [0.25 -+ 3.2048 eps, 0.75 +- 3.2048 eps] with equal
 * output weights, which attains chi2(y) = eps^2 to within 1e-5 relative.
 * Valid for 0 < eps <= 0.07; throws OutOfRangeError otherwise.
 */
Mechanism example1_mechanism(double eps);

}  // namespace liftmech
