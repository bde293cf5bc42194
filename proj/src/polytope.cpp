#include "liftmech/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "liftmech/errors.hpp"

namespace liftmech {

namespace {

/**
 * Gaussian elimination with partial pivoting on an equilibrated copy.
 * Returns false when a pivot falls below the threshold, which marks the
 * chosen active set as rank-deficient.
 */
bool solve_square(std::vector<double> a, std::vector<double> b, int n,
                  std::vector<double>& out) {
  for (int r = 0; r < n; ++r) {
    double scale = 0.0;
    for (int c = 0; c < n; ++c) scale = std::max(scale, std::abs(a[static_cast<std::size_t>(r * n + c)]));
    if (scale <= 0.0) return false;
    for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r * n + c)] /= scale;
    b[static_cast<std::size_t>(r)] /= scale;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

  for (int col = 0; col < n; ++col) {
    int best = col;
    double best_abs = std::abs(a[static_cast<std::size_t>(perm[static_cast<std::size_t>(col)] * n + col)]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)] * n + col)]);
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best_abs < tol::kPivot) return false;
    std::swap(perm[static_cast<std::size_t>(col)], perm[static_cast<std::size_t>(best)]);
    const int prow = perm[static_cast<std::size_t>(col)];
    const double pivot = a[static_cast<std::size_t>(prow * n + col)];
    for (int r = col + 1; r < n; ++r) {
      const int row = perm[static_cast<std::size_t>(r)];
      const double f = a[static_cast<std::size_t>(row * n + col)] / pivot;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) {
        a[static_cast<std::size_t>(row * n + c)] -= f * a[static_cast<std::size_t>(prow * n + c)];
      }
      b[static_cast<std::size_t>(row)] -= f * b[static_cast<std::size_t>(prow)];
    }
  }

  out.assign(static_cast<std::size_t>(n), 0.0);
  for (int col = n - 1; col >= 0; --col) {
    const int row = perm[static_cast<std::size_t>(col)];
    double acc = b[static_cast<std::size_t>(row)];
    for (int c = col + 1; c < n; ++c) acc -= a[static_cast<std::size_t>(row * n + c)] * out[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(col)] = acc / a[static_cast<std::size_t>(row * n + col)];
  }
  return true;
}

/**
 * Solves the square system made of the simplex equation plus the chosen
 * constraints held at equality. Writes the feasible point into `w` and
 * returns true only when the system is full rank and the point lies in the
 * polytope.
 */
bool solve_active_set(const LiftPolytope& poly, const int* combo, int k,
                      std::vector<double>& w) {
  const int n = poly.dim();
  std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(c)] = 1.0;
  b[0] = 1.0;
  for (int r = 0; r < k; ++r) {
    const int id = combo[r];
    if (id < n) {
      a[static_cast<std::size_t>((r + 1) * n + id)] = 1.0;
      b[static_cast<std::size_t>(r + 1)] = 0.0;
    } else {
      const HalfSpace& row = poly.rows()[static_cast<std::size_t>(id - n)];
      for (int c = 0; c < n; ++c) a[static_cast<std::size_t>((r + 1) * n + c)] = row.a[static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r + 1)] = row.b;
    }
  }
  if (!solve_square(std::move(a), std::move(b), n, w)) return false;
  return poly.contains(w);
}

std::vector<std::vector<int>> active_set_combinations(int m, int k) {
  std::vector<std::vector<int>> combos;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    combos.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return combos;
}

VertexSet finalize_vertices(std::vector<std::vector<double>> raw, const LiftPolytope& poly) {
  raw.erase(std::remove_if(raw.begin(), raw.end(),
                           [](const std::vector<double>& w) { return w.empty(); }),
            raw.end());
  if (raw.empty()) {
    throw InternalError("no vertex survived enumeration of a nonempty polytope");
  }
  std::sort(raw.begin(), raw.end(), [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });

  VertexSet out;
  for (auto& w : raw) {
    if (!out.empty()) {
      double dist = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) dist = std::max(dist, std::abs(w[i] - out.back().w[i]));
      if (dist <= tol::kVertexDedup) continue;
    }
    Vertex v;
    v.w = std::move(w);
    for (int i = 0; i < poly.dim(); ++i) {
      if (v.w[static_cast<std::size_t>(i)] <= tol::kFeasible) v.active.push_back(i);
    }
    for (std::size_t j = 0; j < poly.rows().size(); ++j) {
      const HalfSpace& row = poly.rows()[j];
      double dot = 0.0;
      for (std::size_t i = 0; i < v.w.size(); ++i) dot += row.a[i] * v.w[i];
      if (std::abs(dot - row.b) <= tol::kFeasible) v.active.push_back(poly.dim() + static_cast<int>(j));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> clamp_to_simplex(const std::vector<double>& w) {
  std::vector<double> out(w.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = w[i] < 0.0 ? 0.0 : w[i];
    sum += out[i];
  }
  for (auto& v : out) v /= sum;
  return out;
}

}  // namespace

LiftPolytope::LiftPolytope(int dim, std::vector<HalfSpace> rows)
    : dim_(dim), rows_(std::move(rows)) {
  if (dim_ < 2) throw DimensionMismatchError("polytope dimension must be at least 2");
  for (const auto& row : rows_) {
    if (static_cast<int>(row.a.size()) != dim_) {
      throw DimensionMismatchError("constraint row dimension mismatch");
    }
  }
}

bool LiftPolytope::contains(const std::vector<double>& w, double slack) const {
  if (static_cast<int>(w.size()) != dim_) {
    throw DimensionMismatchError("point has " + std::to_string(w.size()) +
                                 " entries, expected " + std::to_string(dim_));
  }
  for (double v : w) {
    if (v < -slack) return false;
  }
  for (const auto& row : rows_) {
    double dot = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) dot += row.a[i] * w[i];
    if (dot > row.b + slack) return false;
  }
  return true;
}

LiftPolytope max_lift_polytope(const JointDistribution& joint, double beta) {
  if (!(beta > 1.0)) {
    throw InvalidBoundError("lift bound must exceed 1, got " + std::to_string(beta));
  }
  std::vector<HalfSpace> rows;
  rows.reserve(static_cast<std::size_t>(joint.s_size()));
  for (int s = 0; s < joint.s_size(); ++s) {
    HalfSpace row;
    row.a.resize(static_cast<std::size_t>(joint.x_size()));
    for (int x = 0; x < joint.x_size(); ++x) row.a[static_cast<std::size_t>(x)] = joint.lift_entry(s, x);
    row.b = beta;
    rows.push_back(std::move(row));
  }
  return LiftPolytope(joint.x_size(), std::move(rows));
}

LiftPolytope symmetric_lift_polytope(const JointDistribution& joint, double eps) {
  if (!(eps > 0.0)) {
    throw InvalidBoundError("lift deviation must be positive, got " + std::to_string(eps));
  }
  std::vector<HalfSpace> rows;
  rows.reserve(2 * static_cast<std::size_t>(joint.s_size()));
  for (int s = 0; s < joint.s_size(); ++s) {
    HalfSpace row;
    row.a.resize(static_cast<std::size_t>(joint.x_size()));
    for (int x = 0; x < joint.x_size(); ++x) row.a[static_cast<std::size_t>(x)] = joint.lift_entry(s, x);
    row.b = 1.0 + eps;
    rows.push_back(row);
    if (1.0 - eps > 0.0) {
      for (auto& v : row.a) v = -v;
      row.b = -(1.0 - eps);
      rows.push_back(std::move(row));
    }
  }
  return LiftPolytope(joint.x_size(), std::move(rows));
}

VertexSet enumerate_vertices_serial(const LiftPolytope& poly) {
  const int m = poly.dim() + static_cast<int>(poly.rows().size());
  const int k = poly.dim() - 1;
  const auto combos = active_set_combinations(m, k);

  std::vector<std::vector<double>> raw(combos.size());
  std::vector<double> w;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (solve_active_set(poly, combos[i].data(), k, w)) raw[i] = clamp_to_simplex(w);
  }
  return finalize_vertices(std::move(raw), poly);
}

VertexSet enumerate_vertices(const LiftPolytope& poly) {
  const int m = poly.dim() + static_cast<int>(poly.rows().size());
  const int k = poly.dim() - 1;
  const auto combos = active_set_combinations(m, k);

  std::vector<std::vector<double>> raw(combos.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(combos.size()); ++i) {
    std::vector<double> w;
    if (solve_active_set(poly, combos[static_cast<std::size_t>(i)].data(), k, w)) {
      raw[static_cast<std::size_t>(i)] = clamp_to_simplex(w);
    }
  }
  return finalize_vertices(std::move(raw), poly);
}

}  // namespace liftmech
