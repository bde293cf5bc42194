#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "liftmech/errors.hpp"
#include "liftmech/measures.hpp"
#include "liftmech/mixture.hpp"
#include "liftmech/prob.hpp"
#include "liftmech/rng.hpp"
#include "oracle_helpers.hpp"

using namespace liftmech;

namespace {

std::vector<double> mix_of(const std::vector<double>& q, const MixtureLp& lp) {
  std::vector<double> mix(lp.target.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t x = 0; x < mix.size(); ++x) mix[x] += q[i] * lp.candidates[i][x];
  }
  return mix;
}

double objective_of(const std::vector<double>& q, const MixtureLp& lp) {
  double obj = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) obj += q[i] * lp.costs[i];
  return obj;
}

}  // namespace

TEST_CASE("a single matching candidate gets all the weight") {
  const MixtureLp lp = make_mixture_lp({{0.25, 0.75}}, {0.25, 0.75});
  const std::vector<double> q = solve_mixture(lp);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-10));
  const Mechanism mech = extract_mechanism(q, lp);
  CHECK(mech.outputs() == 1);
}

TEST_CASE("basis-vector candidates reproduce the target at zero cost") {
  const std::vector<double> target = {0.2, 0.5, 0.3};
  const MixtureLp lp =
      make_mixture_lp({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, target);
  const std::vector<double> q = solve_mixture(lp);
  CHECK(objective_of(q, lp) == doctest::Approx(0.0));
  const std::vector<double> mix = mix_of(q, lp);
  for (std::size_t x = 0; x < target.size(); ++x) {
    CHECK(mix[x] == doctest::Approx(target[x]).epsilon(1e-10));
  }
}

TEST_CASE("the zero-entropy pair beats the uniform candidate") {
  const MixtureLp lp = make_mixture_lp({{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, {0.5, 0.5});
  const std::vector<double> q = solve_mixture(lp);
  CHECK(objective_of(q, lp) == doctest::Approx(0.0));

  double oracle_best = 0.0;
  REQUIRE(oracle::min_basic_feasible(lp.candidates, lp.target, lp.costs, oracle_best));
  CHECK(oracle_best == doctest::Approx(0.0));

  const Mechanism mech = extract_mechanism(q, lp);
  REQUIRE(mech.outputs() == 2);
  CHECK(mech.p_y[0] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("an unreachable target is reported as a caller bug") {
  const MixtureLp lp = make_mixture_lp({{1.0, 0.0}}, {0.5, 0.5});
  CHECK_THROWS_AS(solve_mixture(lp), InfeasibleError);
}

TEST_CASE("duplicates are removed before solving") {
  const MixtureLp lp = make_mixture_lp(
      {{1.0, 0.0}, {1.0, 1e-10}, {0.0, 1.0}, {0.0, 1.0}}, {0.5, 0.5});
  CHECK(lp.candidates.size() == 2);
}

TEST_CASE("extract_mechanism drops zero weights and renormalizes") {
  const MixtureLp lp = make_mixture_lp({{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, {0.5, 0.5});
  const Mechanism mech = extract_mechanism({0.5, 0.5, 0.0}, lp);
  REQUIRE(mech.outputs() == 2);
  CHECK(mech.p_y[0] + mech.p_y[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("matches the exhaustive basic-solution oracle on random instances") {
  Rng rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_u64() % 3);
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    std::vector<std::vector<double>> cands;
    for (int i = 0; i < n; ++i) cands.push_back(sample_dirichlet_flat(dim, rng));
    // A target inside the hull keeps the instance feasible.
    const std::vector<double> weights = sample_dirichlet_flat(n, rng);
    std::vector<double> target(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int x = 0; x < dim; ++x) {
        target[static_cast<std::size_t>(x)] +=
            weights[static_cast<std::size_t>(i)] * cands[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
      }
    }

    const MixtureLp lp = make_mixture_lp(std::move(cands), target);
    const std::vector<double> q = solve_mixture(lp);

    double oracle_best = 0.0;
    REQUIRE(oracle::min_basic_feasible(lp.candidates, lp.target, lp.costs, oracle_best));
    REQUIRE(std::abs(objective_of(q, lp) - oracle_best) <= 1e-8);

    int support = 0;
    for (double v : q) {
      REQUIRE(v >= 0.0);
      if (v > tol::kWeightFloor) ++support;
    }
    REQUIRE(support <= dim);

    const std::vector<double> mix = mix_of(q, lp);
    for (int x = 0; x < dim; ++x) {
      REQUIRE(std::abs(mix[static_cast<std::size_t>(x)] - target[static_cast<std::size_t>(x)]) <= 1e-8);
    }
  }
}

TEST_CASE("adding candidates never hurts the objective") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_u64() % 3);
    std::vector<std::vector<double>> cands;
    for (int i = 0; i < 4; ++i) cands.push_back(sample_dirichlet_flat(dim, rng));
    const std::vector<double> weights = sample_dirichlet_flat(4, rng);
    std::vector<double> target(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < 4; ++i) {
      for (int x = 0; x < dim; ++x) {
        target[static_cast<std::size_t>(x)] +=
            weights[static_cast<std::size_t>(i)] * cands[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
      }
    }
    const MixtureLp base = make_mixture_lp(cands, target);
    const double base_obj = objective_of(solve_mixture(base), base);

    for (int extra = 0; extra < 3; ++extra) cands.push_back(sample_dirichlet_flat(dim, rng));
    const MixtureLp bigger = make_mixture_lp(cands, target);
    const double bigger_obj = objective_of(solve_mixture(bigger), bigger);
    REQUIRE(bigger_obj <= base_obj + 1e-9);
  }
}

TEST_CASE("entropy minus objective equals the mechanism utility") {
  Rng rng(43);
  const JointDistribution joint = validate_joint({{0.1, 0.2, 0.05}, {0.3, 0.15, 0.2}});
  std::vector<std::vector<double>> cands = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                                            {0.0, 0.0, 1.0}, joint.p_x().v};
  for (int i = 0; i < 4; ++i) cands.push_back(sample_dirichlet_flat(3, rng));
  const MixtureLp lp = make_mixture_lp(std::move(cands), joint.p_x().v);
  const std::vector<double> q = solve_mixture(lp);
  const Mechanism mech = extract_mechanism(q, lp);
  const double via_lp = joint.entropy_x() - objective_of(q, lp);
  CHECK(mechanism_utility(joint, mech).mi_xy == doctest::Approx(via_lp).epsilon(1e-9));
}
