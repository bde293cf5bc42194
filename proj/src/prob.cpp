#include "liftmech/prob.hpp"

#include <cmath>
#include <string>

#include "liftmech/errors.hpp"

namespace liftmech {

namespace {

double checked_sum(const std::vector<double>& v, double sum_tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      throw NegativeEntryError("negative probability entry " + std::to_string(v[i]) +
                               " at index " + std::to_string(i));
    }
    sum += v[i];
  }
  if (std::abs(sum - 1.0) > sum_tol) {
    throw NotNormalizedError("probabilities sum to " + std::to_string(sum));
  }
  return sum;
}

}  // namespace

ProbVector make_prob(std::vector<double> v, double sum_tol) {
  if (v.empty()) throw DimensionMismatchError("empty probability vector");
  const double sum = checked_sum(v, sum_tol);
  for (auto& p : v) p /= sum;
  return ProbVector{std::move(v)};
}

ProbVector make_prob_clamped(std::vector<double> v, double sum_tol) {
  for (auto& p : v) {
    if (p < 0.0) {
      if (p < -sum_tol) {
        throw NegativeEntryError("entry " + std::to_string(p) + " below clamping range");
      }
      p = 0.0;
    }
  }
  return make_prob(std::move(v), sum_tol);
}

double entropy(const ProbVector& p) {
  double h = 0.0;
  for (double q : p.v) {
    if (q > 0.0) h -= q * std::log(q);
  }
  return h < 0.0 ? 0.0 : h;
}

JointDistribution validate_joint(const std::vector<std::vector<double>>& matrix) {
  const int s_size = static_cast<int>(matrix.size());
  if (s_size < 2) throw DimensionMismatchError("need at least 2 sensitive symbols");
  const int x_size = static_cast<int>(matrix.front().size());
  if (x_size < 2) throw DimensionMismatchError("need at least 2 data symbols");

  JointDistribution j;
  j.s_size_ = s_size;
  j.x_size_ = x_size;
  j.joint_.resize(static_cast<std::size_t>(s_size) * static_cast<std::size_t>(x_size));

  double sum = 0.0;
  for (int s = 0; s < s_size; ++s) {
    if (static_cast<int>(matrix[static_cast<std::size_t>(s)].size()) != x_size) {
      throw DimensionMismatchError("ragged joint matrix");
    }
    for (int x = 0; x < x_size; ++x) {
      const double p = matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
      if (p < 0.0) {
        throw NegativeEntryError("negative joint entry at (" + std::to_string(s) + "," +
                                 std::to_string(x) + ")");
      }
      j.joint_[j.idx(s, x)] = p;
      sum += p;
    }
  }
  if (std::abs(sum - 1.0) > tol::kInputSum) {
    throw NotNormalizedError("joint matrix sums to " + std::to_string(sum));
  }
  for (auto& p : j.joint_) p /= sum;

  std::vector<double> p_s(static_cast<std::size_t>(s_size), 0.0);
  std::vector<double> p_x(static_cast<std::size_t>(x_size), 0.0);
  for (int s = 0; s < s_size; ++s) {
    for (int x = 0; x < x_size; ++x) {
      p_s[static_cast<std::size_t>(s)] += j.joint_[j.idx(s, x)];
      p_x[static_cast<std::size_t>(x)] += j.joint_[j.idx(s, x)];
    }
  }
  for (int s = 0; s < s_size; ++s) {
    if (p_s[static_cast<std::size_t>(s)] <= 0.0) {
      throw ZeroMarginalError("P_S(" + std::to_string(s) + ") = 0");
    }
  }
  for (int x = 0; x < x_size; ++x) {
    if (p_x[static_cast<std::size_t>(x)] <= 0.0) {
      throw ZeroMarginalError("P_X(" + std::to_string(x) + ") = 0");
    }
  }

  j.channel_.resize(j.joint_.size());
  for (int s = 0; s < s_size; ++s) {
    for (int x = 0; x < x_size; ++x) {
      j.channel_[j.idx(s, x)] = j.joint_[j.idx(s, x)] / p_x[static_cast<std::size_t>(x)];
    }
  }
  j.p_s_ = ProbVector{std::move(p_s)};
  j.p_x_ = ProbVector{std::move(p_x)};
  j.entropy_x_ = entropy(j.p_x_);
  return j;
}

}  // namespace liftmech
