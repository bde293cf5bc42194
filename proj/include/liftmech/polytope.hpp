#pragma once

#include <vector>

#include "liftmech/prob.hpp"

namespace liftmech {

namespace tol {
/** Constraint slack accepted when testing polytope membership. */
inline constexpr double kFeasible = 1e-9;
/** L-infinity distance below which two vertices are considered equal. */
inline constexpr double kVertexDedup = 1e-7;
/** Pivot threshold for the active-set linear solves. */
inline constexpr double kPivot = 1e-10;
}  // namespace tol

/** One inequality a . w <= b over the probability simplex. */
struct HalfSpace {
  std::vector<double> a;
  double b = 0.0;
};

/**
 * A bounded polytope of probability vectors over X:
 *
 *   sum_x w_x = 1,  w_x >= 0,  and  a_j . w <= b_j for every row j.
 *
 * Rows come from lift constraints on the posterior of S; the simplex part is
 * implicit and always present.
 */
class LiftPolytope {
 public:
  LiftPolytope(int dim, std::vector<HalfSpace> rows);

  int dim() const { return dim_; }
  const std::vector<HalfSpace>& rows() const { return rows_; }

  /** All rows within slack, plus nonnegativity; the simplex sum is assumed. */
  bool contains(const std::vector<double>& w, double slack = tol::kFeasible) const;

 private:
  int dim_;
  std::vector<HalfSpace> rows_;
};

/**
 * The max-lift polytope: probability vectors w over X whose induced posterior
 * satisfies  sum_x (P(s|x)/P(s)) w_x <= beta  for every s. Nonempty for every
 * beta >= 1 since w = P_X attains lift exactly 1 on all rows. Throws
 * InvalidBoundError for beta <= 1.
 */
LiftPolytope max_lift_polytope(const JointDistribution& joint, double beta);

/**
 * The symmetric-lift polytope: 1 - eps <= sum_x (P(s|x)/P(s)) w_x <= 1 + eps
 * for every s. Lower rows with 1 - eps <= 0 are vacuous and omitted. Throws
 * InvalidBoundError for eps <= 0.
 */
LiftPolytope symmetric_lift_polytope(const JointDistribution& joint, double eps);

/**
 * A vertex together with its tight constraints. Constraint ids: 0..dim-1 are
 * the nonnegativity facets w_i = 0, dim + j is inequality row j.
 */
struct Vertex {
  std::vector<double> w;
  std::vector<int> active;
};

using VertexSet = std::vector<Vertex>;

/**
 * Exact vertex enumeration by basic-feasible-solution search: every choice of
 * dim-1 constraints from the nonnegativity facets and the inequality rows is
 * solved as equalities together with the simplex equation; full-rank feasible
 * solutions are vertices. Output is sorted lexicographically and deduplicated
 * at L-infinity 1e-7, so it is reproducible regardless of schedule.
 *
 * enumerate_vertices runs the candidate systems in parallel (OpenMP);
 * enumerate_vertices_serial is the plain reference kept for testing. Both
 * produce identical output. Throws InternalError if no vertex survives,
 * which cannot happen for a nonempty bounded polytope.
 */
VertexSet enumerate_vertices(const LiftPolytope& poly);
VertexSet enumerate_vertices_serial(const LiftPolytope& poly);

}  // namespace liftmech
