#include "liftmech/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "liftmech/errors.hpp"
#include "liftmech/simplex.hpp"

namespace liftmech {

MixtureLp make_mixture_lp(std::vector<std::vector<double>> candidates,
                          std::vector<double> target) {
  if (candidates.empty()) throw DimensionMismatchError("empty candidate list");
  const std::size_t dim = target.size();
  for (const auto& w : candidates) {
    if (w.size() != dim) throw DimensionMismatchError("candidate dimension mismatch");
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const std::vector<double>& a, const std::vector<double>& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
            });
  MixtureLp lp;
  lp.target = std::move(target);
  for (auto& w : candidates) {
    if (!lp.candidates.empty()) {
      double dist = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dist = std::max(dist, std::abs(w[i] - lp.candidates.back()[i]));
      if (dist <= tol::kCandidateDedup) continue;
    }
    lp.candidates.push_back(std::move(w));
  }
  lp.costs.reserve(lp.candidates.size());
  for (const auto& w : lp.candidates) lp.costs.push_back(entropy(ProbVector{w}));
  return lp;
}

std::vector<double> solve_mixture(const MixtureLp& lp) {
  const std::size_t dim = lp.target.size();
  const std::size_t n = lp.candidates.size();

  // One mixing row per symbol of X plus the convexity row. The convexity row
  // is linearly dependent on the mixing rows (every candidate sums to one);
  // phase one of the solver identifies and drops the redundancy.
  std::vector<std::vector<double>> a(dim + 1, std::vector<double>(n, 1.0));
  std::vector<double> b(dim + 1, 1.0);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t i = 0; i < n; ++i) a[x][i] = lp.candidates[i][x];
    b[x] = lp.target[x];
  }

  const LpResult res = solve_equality_lp(a, b, lp.costs);
  if (res.status == LpStatus::kInfeasible) {
    throw InfeasibleError("no convex combination of the candidates reproduces the target");
  }
  if (res.status != LpStatus::kOptimal) {
    throw InternalError("mixture program cannot be unbounded");
  }
  return res.x;
}

Mechanism extract_mechanism(const std::vector<double>& q, const MixtureLp& lp) {
  if (q.size() != lp.candidates.size()) {
    throw DimensionMismatchError("weight vector does not match the candidate list");
  }
  Mechanism mech;
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > tol::kWeightFloor) {
      mech.p_y.push_back(q[i]);
      mech.columns.push_back(lp.candidates[i]);
      total += q[i];
    }
  }
  if (mech.p_y.empty()) throw InternalError("all mixture weights below the support floor");
  for (auto& p : mech.p_y) p /= total;
  return mech;
}

}  // namespace liftmech
