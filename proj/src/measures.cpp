#include "liftmech/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftmech/errors.hpp"

namespace liftmech {

PosteriorStats posterior_stats(const JointDistribution& joint, const ProbVector& w) {
  if (w.size() != joint.x_size()) {
    throw DimensionMismatchError("column has " + std::to_string(w.size()) +
                                 " entries, expected " + std::to_string(joint.x_size()));
  }
  const int s_size = joint.s_size();
  PosteriorStats st;
  st.posterior.resize(static_cast<std::size_t>(s_size));
  st.lifts.resize(static_cast<std::size_t>(s_size));
  for (int s = 0; s < s_size; ++s) {
    double acc = 0.0;
    for (int x = 0; x < joint.x_size(); ++x) acc += joint.channel(s, x) * w[x];
    st.posterior[static_cast<std::size_t>(s)] = acc;

    const double prior = joint.p_s()[s];
    const double lift = acc / prior;
    st.lifts[static_cast<std::size_t>(s)] = lift;
    st.max_lift = std::max(st.max_lift, lift);
    if (acc > 0.0) st.kl += acc * std::log(lift);
    st.l1 += std::abs(acc - prior);
    st.chi2 += (acc - prior) * (acc - prior) / prior;
  }
  // KL is nonnegative; tiny negative values are pure rounding.
  st.kl = std::max(st.kl, 0.0);
  return st;
}

LeakageSummary mechanism_leakage(const JointDistribution& joint, const Mechanism& mech) {
  LeakageSummary sum;
  for (int y = 0; y < mech.outputs(); ++y) {
    const auto& col = mech.columns[static_cast<std::size_t>(y)];
    const PosteriorStats st = posterior_stats(joint, ProbVector{col});
    const double py = mech.p_y[static_cast<std::size_t>(y)];
    sum.mi_sy += py * st.kl;
    sum.tv += 0.5 * py * st.l1;
    sum.avg_chi2 += py * st.chi2;
    sum.max_lift = std::max(sum.max_lift, st.max_lift);
    sum.max_kl = std::max(sum.max_kl, st.kl);
    sum.max_l1 = std::max(sum.max_l1, st.l1);
    sum.max_chi2 = std::max(sum.max_chi2, st.chi2);
  }
  return sum;
}

UtilitySummary mechanism_utility(const JointDistribution& joint, const Mechanism& mech) {
  const int x_size = joint.x_size();
  std::vector<double> mix(static_cast<std::size_t>(x_size), 0.0);
  double cond_entropy = 0.0;
  for (int y = 0; y < mech.outputs(); ++y) {
    const auto& col = mech.columns[static_cast<std::size_t>(y)];
    if (static_cast<int>(col.size()) != x_size) {
      throw DimensionMismatchError("mechanism column dimension mismatch");
    }
    const double py = mech.p_y[static_cast<std::size_t>(y)];
    cond_entropy += py * entropy(ProbVector{col});
    for (int x = 0; x < x_size; ++x) mix[static_cast<std::size_t>(x)] += py * col[static_cast<std::size_t>(x)];
  }
  for (int x = 0; x < x_size; ++x) {
    if (std::abs(mix[static_cast<std::size_t>(x)] - joint.p_x()[x]) > tol::kInputSum) {
      throw MixtureMismatchError("columns mix to " + std::to_string(mix[static_cast<std::size_t>(x)]) +
                                 " instead of P_X(" + std::to_string(x) + ") = " +
                                 std::to_string(joint.p_x()[x]));
    }
  }
  UtilitySummary u;
  u.mi_xy = std::max(joint.entropy_x() - cond_entropy, 0.0);
  u.normalized = u.mi_xy / joint.entropy_x();
  return u;
}

}  // namespace liftmech
