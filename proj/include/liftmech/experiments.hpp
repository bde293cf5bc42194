#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liftmech/mechanisms.hpp"
#include "liftmech/prob.hpp"
#include "liftmech/rng.hpp"

namespace liftmech {

/**
 * Draws a joint distribution from the flat Dirichlet on the full simplex,
 * redrawing until every row and column marginal is at least 1e-3 (ratios of
 * the form 1/P(s) would otherwise dominate averaged results). Deterministic
 * given the rng state; throws RejectionOverflowError after 10^4 redraws.
 */
JointDistribution generate_joint(int s_size, int x_size, Rng& rng);

struct ExperimentConfig {
  int s_size = 4;
  int x_size = 7;
  int num_instances = 10;
  std::uint64_t seed = 1;
  SweepConfig sweep;
  std::vector<Measure> kinds;
  std::string output_path = "sweep.csv";
};

/** Default budget grid 0.005..0.17 step 0.015 with ladder counts 30/100. */
SweepConfig default_sweep_config();

/**
 * Parses a flat key=value config file ('#' comments allowed). Unknown keys
 * and malformed values raise ConfigError. Keys mirror ExperimentConfig:
 * s_size, x_size, num_instances, seed, delta, epsilon_end, kinds, output,
 * and the grid either as epsilons=comma-list or eps_start/eps_step/eps_stop,
 * with refinement as refinement_counts=comma-list or refine + refine_last.
 */
ExperimentConfig parse_config_file(const std::string& path);

struct CsvRow {
  int instance_id = 0;
  Measure measure = Measure::kKl;
  std::string mechanism;
  double epsilon = 0.0;
  double utility_nats = 0.0;
  double normalized_utility = 0.0;
  double leakage_mi_nats = 0.0;
  double max_lift = 0.0;
  double log_max_lift = 0.0;
  double max_measure = 0.0;
  std::size_t candidate_count = 0;
  double wall_time_ms = 0.0;
};

/**
 * Runs both mechanisms over every instance and measure and collects one row
 * per (instance, measure, mechanism, epsilon). Instances run in parallel;
 * rows are ordered by instance id, so output is deterministic apart from the
 * wall_time_ms column.
 */
std::vector<CsvRow> collect_sweep_rows(const ExperimentConfig& cfg);

/** Per-(measure, mechanism, epsilon) means across instances. */
struct AggregateRow {
  Measure measure = Measure::kKl;
  std::string mechanism;
  double epsilon = 0.0;
  double mean_utility_nats = 0.0;
  double mean_normalized_utility = 0.0;
  double mean_leakage_mi_nats = 0.0;
  double mean_max_lift = 0.0;
  double mean_log_max_lift = 0.0;
  double mean_max_measure = 0.0;
  double mean_candidate_count = 0.0;
  double mean_wall_time_ms = 0.0;
};

std::vector<AggregateRow> aggregate_rows(const std::vector<CsvRow>& rows);

/**
 * Runs the sweep and writes the per-row CSV to cfg.output_path and the
 * aggregate CSV next to it (suffix "_aggregate"). Values are printed with 17
 * significant digits so parsing them back is exact. Throws IoError on write
 * failure.
 */
void run_sweep(const ExperimentConfig& cfg);

/** The aggregate path derived from an output path. */
std::string aggregate_path(const std::string& output_path);

struct ValidationRow {
  double epsilon = 0.0;
  double utility = 0.0;            // band-search sweep, chi-square measure
  double utility_reference = 0.0;  // closed-form mechanism
  double utility_diff = 0.0;       // absolute difference, nats
  double max_chi2 = 0.0;
  double max_chi2_reference = 0.0;
  double max_lift = 0.0;
  double max_lift_reference = 0.0;
  bool flagged = false;  // utility_diff > 1e-3
};

/**
 * Compares the chi-square band-search sweep against the closed-form
 * mechanism on the fixed validation instance. Budgets must lie in
 * (0, 0.07]; throws OutOfRangeError otherwise.
 */
std::vector<ValidationRow> validate_example1(std::vector<double> epsilons);

/** Row-major space-separated matrix text, one line per row of S. */
std::string format_joint_matrix(const JointDistribution& joint);

}  // namespace liftmech
