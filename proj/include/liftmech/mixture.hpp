#pragma once

#include <vector>

#include "liftmech/measures.hpp"
#include "liftmech/prob.hpp"

namespace liftmech {

namespace tol {
/** L-infinity tolerance for deduplicating candidate columns. */
inline constexpr double kCandidateDedup = 1e-9;
/** Weights at or below this level are dropped from the mechanism support. */
inline constexpr double kWeightFloor = 1e-10;
}  // namespace tol

/**
 * The entropy-minimizing mixture program: choose convex weights q over the
 * candidate columns so that sum_i q_i W_i = target while minimizing
 * sum_i q_i h(W_i). Its optimal basic solutions are exactly the
 * utility-optimal mechanisms supported on the candidate set.
 */
struct MixtureLp {
  std::vector<std::vector<double>> candidates;  // deduplicated, sorted
  std::vector<double> costs;                    // entropy of each candidate
  std::vector<double> target;                   // P_X
};

/**
 * Sorts the candidates lexicographically and removes duplicates (L-infinity
 * 1e-9) before building the program; a duplicate has identical cost, so the
 * optimum is unchanged.
 */
MixtureLp make_mixture_lp(std::vector<std::vector<double>> candidates,
                          std::vector<double> target);

/**
 * Solves the program with the two-phase simplex and returns the weight
 * vector aligned with lp.candidates. Throws InfeasibleError when no convex
 * combination reproduces the target, which signals a caller bug: every
 * caller in this library seeds the candidate set with a known decomposition.
 */
std::vector<double> solve_mixture(const MixtureLp& lp);

/**
 * Drops weights at or below 1e-10, renormalizes, and relabels the surviving
 * candidates as the output alphabet.
 */
Mechanism extract_mechanism(const std::vector<double>& q, const MixtureLp& lp);

}  // namespace liftmech
