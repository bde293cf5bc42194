/**
 * Timing comparison between the serial reference kernels and their OpenMP
 * counterparts: single-polytope vertex enumeration and whole-ladder
 * harvesting on a seeded 4x7 instance.
 */

#include <chrono>
#include <cstdio>
#include <vector>

#include "liftmech/experiments.hpp"
#include "liftmech/mechanisms.hpp"
#include "liftmech/polytope.hpp"

using namespace liftmech;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main() {
  Rng rng(20250811);
  const JointDistribution joint = generate_joint(4, 7, rng);

  const LiftPolytope poly = symmetric_lift_polytope(joint, 0.08);
  std::size_t n_serial = 0, n_parallel = 0;
  const double t_enum_serial = time_ms([&] { n_serial = enumerate_vertices_serial(poly).size(); }, 20);
  const double t_enum_parallel = time_ms([&] { n_parallel = enumerate_vertices(poly).size(); }, 20);
  std::printf("vertex enumeration (4x7 symmetric polytope, %zu vertices)\n", n_serial);
  std::printf("  serial   %9.3f ms\n", t_enum_serial);
  std::printf("  openmp   %9.3f ms   speedup %.2fx%s\n", t_enum_parallel,
              t_enum_serial / t_enum_parallel, n_serial == n_parallel ? "" : "  MISMATCH");

  std::vector<double> grid;
  for (int k = 0; k < 400; ++k) grid.push_back(0.005 + 0.002 * k);
  std::size_t h_serial = 0, h_parallel = 0;
  const double t_h_serial = time_ms([&] {
    h_serial = 0;
    for (const auto& set : harvest_candidates_serial(joint, grid, Measure::kKl)) h_serial += set.size();
  }, 3);
  const double t_h_parallel = time_ms([&] {
    h_parallel = 0;
    for (const auto& set : harvest_candidates(joint, grid, Measure::kKl)) h_parallel += set.size();
  }, 3);
  std::printf("ladder harvest (400 levels, %zu candidates)\n", h_serial);
  std::printf("  serial   %9.3f ms\n", t_h_serial);
  std::printf("  openmp   %9.3f ms   speedup %.2fx%s\n", t_h_parallel,
              t_h_serial / t_h_parallel, h_serial == h_parallel ? "" : "  MISMATCH");
  return 0;
}
