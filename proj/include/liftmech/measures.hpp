#pragma once

#include <vector>

#include "liftmech/prob.hpp"

namespace liftmech {

/**
 * Leakage statistics of a single mechanism column W = P(X|Y=y): the induced
 * posterior over S, the per-s lift ratios, and the three per-output measures
 * evaluated at that column. All logarithms are natural.
 *
 *   kl(y)   = sum_s P(s|y) log( P(s|y) / P(s) )     (KL of posterior vs prior)
 *   l1(y)   = sum_s | P(s|y) - P(s) |
 *   chi2(y) = sum_s ( P(s|y) - P(s) )^2 / P(s)
 */
struct PosteriorStats {
  std::vector<double> posterior;  // over S
  std::vector<double> lifts;      // P(s|y) / P(s)
  double max_lift = 0.0;
  double kl = 0.0;
  double l1 = 0.0;
  double chi2 = 0.0;
};

/** Evaluates the statistics above; throws DimensionMismatchError. */
PosteriorStats posterior_stats(const JointDistribution& joint, const ProbVector& w);

/**
 * A privacy mechanism in output-decomposition form: output weights P(Y=y)
 * and per-output columns P(X|Y=y) whose P_Y-mixture reproduces P_X.
 */
struct Mechanism {
  std::vector<double> p_y;
  std::vector<std::vector<double>> columns;

  int outputs() const { return static_cast<int>(p_y.size()); }
};

struct LeakageSummary {
  double mi_sy = 0.0;     // I(S;Y) = sum_y P(y) kl(y), nats
  double tv = 0.0;        // total variation = 1/2 sum_y P(y) l1(y)
  double avg_chi2 = 0.0;  // sum_y P(y) chi2(y)
  double max_lift = 0.0;  // max over (s, y)
  double max_kl = 0.0;
  double max_l1 = 0.0;
  double max_chi2 = 0.0;
};

LeakageSummary mechanism_leakage(const JointDistribution& joint, const Mechanism& mech);

struct UtilitySummary {
  double mi_xy = 0.0;       // I(X;Y) = H(X) - sum_y P(y) h(W_y), nats
  double normalized = 0.0;  // I(X;Y) / H(X)
};

/**
 * Utility of a mechanism. Throws MixtureMismatchError if the P_Y-mixture of
 * the columns deviates from P_X by more than 1e-6 in L-infinity.
 */
UtilitySummary mechanism_utility(const JointDistribution& joint, const Mechanism& mech);

}  // namespace liftmech
