#pragma once

#include <vector>

namespace liftmech {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/**
 * Dense two-phase primal simplex for
 *
 *   min c . x   s.t.   A x = b,  x >= 0,
 *
 * with Bland's anti-cycling rule in both phases, so termination is
 * guaranteed and the result is a basic optimal solution (at most rank(A)
 * nonzero entries). Redundant rows are detected after phase one, when their
 * artificial variable stays basic at level zero and cannot be driven out,
 * and are dropped. Intended for the small dense programs this library
 * produces; no sparsity, no dual values.
 */
LpResult solve_equality_lp(const std::vector<std::vector<double>>& a,
                           const std::vector<double>& b,
                           const std::vector<double>& c);

}  // namespace liftmech
