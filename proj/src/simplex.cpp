#include "liftmech/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "liftmech/errors.hpp"

namespace liftmech {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;
constexpr double kRatioTieTol = 1e-12;
constexpr long kMaxPivots = 2'000'000;

struct Tableau {
  int m = 0;       // live rows
  int n = 0;       // original columns
  int cols = 0;    // n + m artificials + rhs
  std::vector<std::vector<double>> t;
  std::vector<int> basis;           // per row, column index in [0, n + m)
  std::vector<double> red;          // reduced costs over [0, n + m)
  double obj = 0.0;                 // objective of the current basis

  double rhs(int i) const { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols - 1)]; }

  void pivot(int leave, int enter) {
    auto& prow = t[static_cast<std::size_t>(leave)];
    const double inv = 1.0 / prow[static_cast<std::size_t>(enter)];
    for (auto& v : prow) v *= inv;
    prow[static_cast<std::size_t>(enter)] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      auto& row = t[static_cast<std::size_t>(i)];
      const double f = row[static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(enter)] = 0.0;
    }
    const double f = red[static_cast<std::size_t>(enter)];
    if (f != 0.0) {
      for (int j = 0; j < cols - 1; ++j) red[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      obj += f * prow[static_cast<std::size_t>(cols - 1)];
    }
    red[static_cast<std::size_t>(enter)] = 0.0;
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  /**
   * Bland's rule: entering column is the lowest-index original column with a
   * negative reduced cost; the leaving row minimizes the ratio, ties broken
   * by the lowest basic-variable index. Returns kOptimal or kUnbounded.
   */
  LpStatus iterate() {
    for (long step = 0; step < kMaxPivots; ++step) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (red[static_cast<std::size_t>(j)] < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        const double step_coeff = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (step_coeff <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / step_coeff;
        if (leave < 0 || ratio < best - kRatioTieTol * (1.0 + std::abs(best))) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + kRatioTieTol * (1.0 + std::abs(best)) &&
                   basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
    throw InternalError("simplex exceeded its pivot budget");
  }
};

}  // namespace

LpResult solve_equality_lp(const std::vector<std::vector<double>>& a,
                           const std::vector<double>& b,
                           const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) throw DimensionMismatchError("rhs size mismatch");
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw DimensionMismatchError("LP row size mismatch");
  }
  if (m == 0) {
    return LpResult{LpStatus::kOptimal, std::vector<double>(static_cast<std::size_t>(n), 0.0), 0.0};
  }

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.cols = n + m + 1;
  tab.t.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(tab.cols), 0.0));
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double sign = b[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sign * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1.0;
    tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(tab.cols - 1)] = sign * b[static_cast<std::size_t>(i)];
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }

  // Phase one: minimize the sum of artificials from the all-artificial basis.
  tab.red.assign(static_cast<std::size_t>(n + m), 0.0);
  tab.obj = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.red[static_cast<std::size_t>(j)] -= tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    tab.obj += tab.rhs(i);
  }
  if (tab.iterate() != LpStatus::kOptimal) {
    throw InternalError("phase-one objective is bounded below by zero");
  }
  if (tab.obj > kPhaseOneTol) {
    return LpResult{LpStatus::kInfeasible, {}, 0.0};
  }

  // Drive artificials out of the basis; rows that cannot pivot are redundant.
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) {
      keep.push_back(i);
      continue;
    }
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > kPivotTol) {
        bool basic = false;
        for (int r = 0; r < m; ++r) {
          if (tab.basis[static_cast<std::size_t>(r)] == j) {
            basic = true;
            break;
          }
        }
        if (!basic) {
          enter = j;
          break;
        }
      }
    }
    if (enter >= 0) {
      tab.pivot(i, enter);
      keep.push_back(i);
    }
  }
  if (static_cast<int>(keep.size()) < tab.m) {
    std::vector<std::vector<double>> rows;
    std::vector<int> basis;
    for (int i : keep) {
      rows.push_back(std::move(tab.t[static_cast<std::size_t>(i)]));
      basis.push_back(tab.basis[static_cast<std::size_t>(i)]);
    }
    tab.t = std::move(rows);
    tab.basis = std::move(basis);
    tab.m = static_cast<int>(tab.t.size());
  }

  // Phase two with the real costs over the feasible basis.
  tab.red.assign(static_cast<std::size_t>(n + m), 0.0);
  for (int j = 0; j < n; ++j) tab.red[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
  tab.obj = 0.0;
  for (int i = 0; i < tab.m; ++i) {
    const double cb = c[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])];
    if (cb == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      tab.red[static_cast<std::size_t>(j)] -= cb * tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    tab.obj += cb * tab.rhs(i);
  }
  for (int i = 0; i < tab.m; ++i) tab.red[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])] = 0.0;
  const LpStatus status = tab.iterate();
  if (status == LpStatus::kUnbounded) {
    return LpResult{LpStatus::kUnbounded, {}, 0.0};
  }

  LpResult res;
  res.status = LpStatus::kOptimal;
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < tab.m; ++i) {
    res.x[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])] = std::max(tab.rhs(i), 0.0);
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
  return res;
}

}  // namespace liftmech
