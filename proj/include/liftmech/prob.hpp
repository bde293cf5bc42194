#pragma once

#include <vector>

namespace liftmech {

namespace tol {
/** Normalization tolerance for internally constructed distributions. */
inline constexpr double kProbSum = 1e-9;
/** Normalization tolerance for user-supplied matrices. */
inline constexpr double kInputSum = 1e-6;
/** L-infinity tolerance for equality-of-distribution checks. */
inline constexpr double kDistEq = 1e-8;
}  // namespace tol

/** A probability vector over a finite alphabet. Construct via make_prob. */
struct ProbVector {
  std::vector<double> v;

  int size() const { return static_cast<int>(v.size()); }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

/**
 * Validates entries (nonnegative, sum within `sum_tol` of one) and returns
 * the vector rescaled to sum exactly to one.
 */
ProbVector make_prob(std::vector<double> v, double sum_tol = tol::kProbSum);

/**
 * Builds a ProbVector from nearly-valid numerical output: entries below zero
 * by at most `sum_tol` are clamped to zero before rescaling. Intended for
 * solutions of linear systems that are feasible only up to solver tolerance.
 */
ProbVector make_prob_clamped(std::vector<double> v, double sum_tol = tol::kProbSum);

/** Shannon entropy in nats, with 0 log 0 = 0. */
double entropy(const ProbVector& p);

/**
 * A joint distribution of a sensitive feature S (rows) and useful data X
 * (columns), with cached marginals and the channel P(S|X). Both marginals
 * are strictly positive by construction; lift ratios divide by them.
 */
class JointDistribution {
 public:
  int s_size() const { return s_size_; }
  int x_size() const { return x_size_; }

  double joint(int s, int x) const { return joint_[idx(s, x)]; }
  const ProbVector& p_s() const { return p_s_; }
  const ProbVector& p_x() const { return p_x_; }

  /** P(S = s | X = x). */
  double channel(int s, int x) const { return channel_[idx(s, x)]; }

  /** P(S = s | X = x) / P(S = s): entry of the lift constraint matrix. */
  double lift_entry(int s, int x) const { return channel_[idx(s, x)] / p_s_[s]; }

  /** H(X) in nats. */
  double entropy_x() const { return entropy_x_; }

  friend JointDistribution validate_joint(const std::vector<std::vector<double>>& matrix);

 private:
  JointDistribution() = default;
  std::size_t idx(int s, int x) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(x_size_) +
           static_cast<std::size_t>(x);
  }

  int s_size_ = 0;
  int x_size_ = 0;
  std::vector<double> joint_;    // row-major, s * x
  std::vector<double> channel_;  // row-major, P(S|X)
  ProbVector p_s_;
  ProbVector p_x_;
  double entropy_x_ = 0.0;
};

/**
 * Validates an |S| x |X| matrix of joint probabilities and caches the derived
 * quantities. Throws DimensionMismatchError (either side < 2),
 * NegativeEntryError, NotNormalizedError (sum off by more than 1e-6), or
 * ZeroMarginalError (some row or column sum vanishes).
 */
JointDistribution validate_joint(const std::vector<std::vector<double>>& matrix);

}  // namespace liftmech
