#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "liftmech/errors.hpp"
#include "liftmech/experiments.hpp"
#include "liftmech/rng.hpp"

using namespace liftmech;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/liftmech_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

/** The CSV with the wall-time column blanked; timing is not reproducible. */
std::string stable_csv(const std::string& path, int wall_col) {
  const auto rows = read_csv(path);
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += static_cast<int>(i) == wall_col ? std::string("-") : row[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("generate_joint is deterministic and respects the marginal floor") {
  Rng a(77), b(77);
  const JointDistribution ja = generate_joint(4, 7, a);
  const JointDistribution jb = generate_joint(4, 7, b);
  for (int s = 0; s < 4; ++s) {
    for (int x = 0; x < 7; ++x) REQUIRE(ja.joint(s, x) == jb.joint(s, x));
  }
  for (int s = 0; s < 4; ++s) CHECK(ja.p_s()[s] >= 1e-3);
  for (int x = 0; x < 7; ++x) CHECK(ja.p_x()[x] >= 1e-3);
  CHECK_THROWS_AS((void)generate_joint(1, 7, a), DimensionMismatchError);
}

TEST_CASE("the mean of a fixed entry matches the flat-Dirichlet expectation") {
  Rng rng(78);
  const int draws = 1000;
  double mean = 0.0;
  for (int i = 0; i < draws; ++i) mean += generate_joint(4, 7, rng).joint(0, 0);
  mean /= draws;
  // Entry variance under Dirichlet(1,...,1) on 28 cells is p(1-p)/29.
  const double p = 1.0 / 28.0;
  const double stderr3 = 3.0 * std::sqrt(p * (1.0 - p) / 29.0 / draws);
  CHECK(std::abs(mean - p) <= stderr3);
}

TEST_CASE("config parsing fills an experiment config") {
  const std::string path = temp_path("config_good.txt");
  write_file(path,
             "# comment\n"
             "s_size = 3\n"
             "x_size = 4\n"
             "num_instances = 2\n"
             "seed = 99\n"
             "epsilons = 0.01, 0.02, 0.05\n"
             "refinement_counts = 4, 4, 10\n"
             "delta = 0.1\n"
             "epsilon_end = 0.2\n"
             "kinds = kl, chi2\n"
             "output = /tmp/liftmech_test_out.csv\n");
  const ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.s_size == 3);
  CHECK(cfg.x_size == 4);
  CHECK(cfg.num_instances == 2);
  CHECK(cfg.seed == 99);
  REQUIRE(cfg.sweep.epsilons.size() == 3);
  CHECK(cfg.sweep.epsilons[2] == doctest::Approx(0.05));
  CHECK(cfg.sweep.refinement_counts[2] == 10);
  CHECK(cfg.sweep.delta == doctest::Approx(0.1));
  CHECK(cfg.sweep.epsilon_end == doctest::Approx(0.2));
  REQUIRE(cfg.kinds.size() == 2);
  CHECK(cfg.kinds[0] == Measure::kKl);
  CHECK(cfg.kinds[1] == Measure::kChi2);
  CHECK(cfg.output_path == "/tmp/liftmech_test_out.csv");
}

TEST_CASE("config parsing accepts the start/step/stop form and defaults") {
  const std::string path = temp_path("config_triple.txt");
  write_file(path,
             "eps_start = 0.005\n"
             "eps_step = 0.015\n"
             "eps_stop = 0.17\n"
             "refine = 30\n"
             "refine_last = 100\n");
  const ExperimentConfig cfg = parse_config_file(path);
  REQUIRE(cfg.sweep.epsilons.size() == 12);
  CHECK(cfg.sweep.epsilons.front() == doctest::Approx(0.005));
  CHECK(cfg.sweep.epsilons.back() == doctest::Approx(0.17));
  CHECK(cfg.sweep.refinement_counts.front() == 30);
  CHECK(cfg.sweep.refinement_counts.back() == 100);
  CHECK(cfg.kinds.size() == 1);
}

TEST_CASE("config errors are reported") {
  const std::string bad_key = temp_path("config_badkey.txt");
  write_file(bad_key, "nonsense = 1\n");
  CHECK_THROWS_AS(parse_config_file(bad_key), ConfigError);

  const std::string bad_val = temp_path("config_badval.txt");
  write_file(bad_val, "s_size = banana\n");
  CHECK_THROWS_AS(parse_config_file(bad_val), ConfigError);

  const std::string bad_measure = temp_path("config_badmeasure.txt");
  write_file(bad_measure, "kinds = tv\n");
  CHECK_THROWS_AS(parse_config_file(bad_measure), ConfigError);

  CHECK_THROWS_AS(parse_config_file("/nonexistent/liftmech.conf"), IoError);
}

TEST_CASE("one instance, one budget, one measure produces two rows") {
  ExperimentConfig cfg;
  cfg.s_size = 2;
  cfg.x_size = 3;
  cfg.num_instances = 1;
  cfg.seed = 7;
  cfg.sweep.epsilons = {0.05};
  cfg.sweep.refinement_counts = {5};
  cfg.sweep.delta = 0.05;
  cfg.sweep.epsilon_end = 0.2;
  cfg.kinds = {Measure::kKl};
  const auto rows = collect_sweep_rows(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mechanism == "max_lift");
  CHECK(rows[1].mechanism == "band_search");
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.utility_nats));
    CHECK(row.max_measure <= row.epsilon + 1e-8);
    CHECK(row.log_max_lift == doctest::Approx(std::log(row.max_lift)).epsilon(1e-12));
  }
}

TEST_CASE("aggregates are exact means of the per-instance rows") {
  ExperimentConfig cfg;
  cfg.s_size = 2;
  cfg.x_size = 3;
  cfg.num_instances = 3;
  cfg.seed = 11;
  cfg.sweep.epsilons = {0.03, 0.08};
  cfg.sweep.refinement_counts = {5, 10};
  cfg.sweep.delta = 0.05;
  cfg.sweep.epsilon_end = 0.3;
  cfg.kinds = {Measure::kKl, Measure::kL1};
  const auto rows = collect_sweep_rows(cfg);
  REQUIRE(rows.size() == 3 * 2 * 2 * 2);
  const auto aggs = aggregate_rows(rows);
  REQUIRE(aggs.size() == 2 * 2 * 2);
  for (const auto& agg : aggs) {
    double sum = 0.0;
    int count = 0;
    for (const auto& row : rows) {
      if (row.measure == agg.measure && row.mechanism == agg.mechanism &&
          row.epsilon == agg.epsilon) {
        sum += row.normalized_utility;
        ++count;
      }
    }
    REQUIRE(count == 3);
    REQUIRE(std::abs(agg.mean_normalized_utility - sum / 3.0) <= 1e-12);
  }
}

TEST_CASE("run_sweep writes byte-identical output apart from timings") {
  ExperimentConfig cfg;
  cfg.s_size = 2;
  cfg.x_size = 3;
  cfg.num_instances = 2;
  cfg.seed = 13;
  cfg.sweep.epsilons = {0.05, 0.1};
  cfg.sweep.refinement_counts = {4, 8};
  cfg.sweep.delta = 0.05;
  cfg.sweep.epsilon_end = 0.4;
  cfg.kinds = {Measure::kChi2};

  cfg.output_path = temp_path("repro_a.csv");
  run_sweep(cfg);
  cfg.output_path = temp_path("repro_b.csv");
  run_sweep(cfg);

  CHECK(stable_csv(temp_path("repro_a.csv"), 11) == stable_csv(temp_path("repro_b.csv"), 11));
  CHECK(stable_csv(aggregate_path(temp_path("repro_a.csv")), 10) ==
        stable_csv(aggregate_path(temp_path("repro_b.csv")), 10));

  const auto body = read_csv(temp_path("repro_a.csv"));
  REQUIRE(body.size() == 1 + 2 * 2 * 2);
  REQUIRE(body[0].size() == 12);
  CHECK(body[0][0] == "instance_id");
  CHECK(body[0][11] == "wall_time_ms");
}

TEST_CASE("aggregate_path naming") {
  CHECK(aggregate_path("sweep.csv") == "sweep_aggregate.csv");
  CHECK(aggregate_path("/a/b.c/sweep.csv") == "/a/b.c/sweep_aggregate.csv");
  CHECK(aggregate_path("/a.d/sweep") == "/a.d/sweep_aggregate");
  CHECK(aggregate_path("sweep") == "sweep_aggregate");
}

TEST_CASE("validation rows stay under the mismatch threshold") {
  const auto report = validate_example1({0.01, 0.05});
  REQUIRE(report.size() == 2);
  for (const auto& row : report) {
    CHECK(row.utility_diff <= 1e-3);
    CHECK_FALSE(row.flagged);
    CHECK(row.max_chi2 <= row.epsilon * row.epsilon + 1e-8);
    CHECK(std::abs(row.max_chi2_reference - row.epsilon * row.epsilon) <=
          0.02 * row.epsilon * row.epsilon);
  }
  CHECK_THROWS_AS(validate_example1({0.08}), OutOfRangeError);
  CHECK_THROWS_AS(validate_example1({0.0}), OutOfRangeError);
  CHECK_THROWS_AS(validate_example1({}), OutOfRangeError);
}

TEST_CASE("the matrix text form is stable and parseable") {
  Rng rng(79);
  const JointDistribution j = generate_joint(2, 3, rng);
  const std::string text = format_joint_matrix(j);
  std::stringstream ss(text);
  std::vector<std::vector<double>> parsed(2, std::vector<double>(3));
  for (auto& row : parsed) {
    for (auto& v : row) REQUIRE((ss >> v));
  }
  const JointDistribution back = validate_joint(parsed);
  for (int s = 0; s < 2; ++s) {
    for (int x = 0; x < 3; ++x) CHECK(back.joint(s, x) == doctest::Approx(j.joint(s, x)).epsilon(1e-15));
  }
}
