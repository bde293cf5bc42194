#include "liftmech/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "liftmech/errors.hpp"

namespace liftmech {

namespace {

constexpr double kMarginalFloor = 1e-3;
constexpr int kMaxRedraws = 10000;
constexpr double kValidationTol = 1e-3;  // nats

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + value + "'");
  }
}

Measure parse_measure(const std::string& name) {
  if (name == "kl") return Measure::kKl;
  if (name == "l1") return Measure::kL1;
  if (name == "chi2") return Measure::kChi2;
  throw ConfigError("unknown measure '" + name + "' (expected kl, l1 or chi2)");
}

}  // namespace

JointDistribution generate_joint(int s_size, int x_size, Rng& rng) {
  if (s_size < 2 || x_size < 2) throw DimensionMismatchError("alphabet sizes must be at least 2");
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::vector<double> flat = sample_dirichlet_flat(s_size * x_size, rng);
    std::vector<std::vector<double>> matrix(static_cast<std::size_t>(s_size));
    std::vector<double> col_sum(static_cast<std::size_t>(x_size), 0.0);
    bool ok = true;
    for (int s = 0; s < s_size; ++s) {
      auto& row = matrix[static_cast<std::size_t>(s)];
      row.assign(flat.begin() + static_cast<std::ptrdiff_t>(s) * x_size,
                 flat.begin() + static_cast<std::ptrdiff_t>(s + 1) * x_size);
      double row_sum = 0.0;
      for (int x = 0; x < x_size; ++x) {
        row_sum += row[static_cast<std::size_t>(x)];
        col_sum[static_cast<std::size_t>(x)] += row[static_cast<std::size_t>(x)];
      }
      if (row_sum < kMarginalFloor) ok = false;
    }
    for (double c : col_sum) {
      if (c < kMarginalFloor) ok = false;
    }
    if (ok) return validate_joint(matrix);
  }
  throw RejectionOverflowError("no draw met the marginal floor after " +
                               std::to_string(kMaxRedraws) + " attempts");
}

SweepConfig default_sweep_config() {
  SweepConfig cfg;
  for (int k = 0; k < 12; ++k) cfg.epsilons.push_back(0.005 + 0.015 * k);
  cfg.refinement_counts.assign(cfg.epsilons.size(), 30);
  cfg.refinement_counts.back() = 100;
  cfg.delta = 0.05;
  cfg.epsilon_end = 1.0;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");

  ExperimentConfig cfg;
  cfg.sweep = default_sweep_config();
  cfg.kinds = {Measure::kKl};

  std::vector<double> epsilons;
  double eps_start = 0.0, eps_step = 0.0, eps_stop = 0.0;
  bool has_triple = false;
  std::vector<int> refinement;
  int refine = -1, refine_last = -1;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "s_size") {
      cfg.s_size = static_cast<int>(parse_int(key, value));
    } else if (key == "x_size") {
      cfg.x_size = static_cast<int>(parse_int(key, value));
    } else if (key == "num_instances") {
      cfg.num_instances = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "delta") {
      cfg.sweep.delta = parse_double(key, value);
    } else if (key == "epsilon_end") {
      cfg.sweep.epsilon_end = parse_double(key, value);
    } else if (key == "epsilons") {
      for (const auto& part : split(value, ',')) epsilons.push_back(parse_double(key, part));
    } else if (key == "eps_start") {
      eps_start = parse_double(key, value);
      has_triple = true;
    } else if (key == "eps_step") {
      eps_step = parse_double(key, value);
      has_triple = true;
    } else if (key == "eps_stop") {
      eps_stop = parse_double(key, value);
      has_triple = true;
    } else if (key == "refinement_counts") {
      for (const auto& part : split(value, ',')) {
        refinement.push_back(static_cast<int>(parse_int(key, part)));
      }
    } else if (key == "refine") {
      refine = static_cast<int>(parse_int(key, value));
    } else if (key == "refine_last") {
      refine_last = static_cast<int>(parse_int(key, value));
    } else if (key == "kinds") {
      cfg.kinds.clear();
      for (const auto& part : split(value, ',')) cfg.kinds.push_back(parse_measure(part));
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (!epsilons.empty()) {
    cfg.sweep.epsilons = std::move(epsilons);
  } else if (has_triple) {
    if (!(eps_step > 0.0) || !(eps_start > 0.0) || eps_stop < eps_start) {
      throw ConfigError("eps_start/eps_step/eps_stop must describe a positive increasing grid");
    }
    cfg.sweep.epsilons.clear();
    for (int k = 0;; ++k) {
      const double e = eps_start + static_cast<double>(k) * eps_step;
      if (e > eps_stop + 1e-9 * eps_step) break;
      cfg.sweep.epsilons.push_back(e);
    }
  }
  const std::size_t levels = cfg.sweep.epsilons.size();
  if (!refinement.empty()) {
    cfg.sweep.refinement_counts = std::move(refinement);
  } else if (refine > 0 || refine_last > 0) {
    cfg.sweep.refinement_counts.assign(levels, refine > 0 ? refine : 30);
    if (refine_last > 0) cfg.sweep.refinement_counts.back() = refine_last;
  } else if (cfg.sweep.refinement_counts.size() != levels) {
    cfg.sweep.refinement_counts.assign(levels, 30);
    cfg.sweep.refinement_counts.back() = 100;
  }

  if (cfg.s_size < 2 || cfg.x_size < 2) throw ConfigError("alphabet sizes must be at least 2");
  if (cfg.num_instances < 1) throw ConfigError("num_instances must be at least 1");
  if (cfg.kinds.empty()) throw ConfigError("at least one measure required");
  try {
    validate_sweep_config(cfg.sweep);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid sweep grid: ") + e.what());
  }
  return cfg;
}

std::vector<CsvRow> collect_sweep_rows(const ExperimentConfig& cfg) {
  validate_sweep_config(cfg.sweep);
  std::vector<std::vector<CsvRow>> per_instance(static_cast<std::size_t>(cfg.num_instances));
  std::vector<std::string> failures(static_cast<std::size_t>(cfg.num_instances));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t inst = 0; inst < cfg.num_instances; ++inst) {
    try {
      Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(inst)));
      const JointDistribution joint = generate_joint(cfg.s_size, cfg.x_size, rng);
      auto& rows = per_instance[static_cast<std::size_t>(inst)];
      for (Measure m : cfg.kinds) {
        const auto emit = [&](const char* mechanism, const SweepPoint& pt) {
          CsvRow row;
          row.instance_id = static_cast<int>(inst);
          row.measure = m;
          row.mechanism = mechanism;
          row.epsilon = pt.epsilon;
          row.utility_nats = pt.utility;
          row.normalized_utility = pt.normalized_utility;
          row.leakage_mi_nats = pt.leakage_mi;
          row.max_lift = pt.max_lift;
          row.log_max_lift = std::log(pt.max_lift);
          row.max_measure = pt.max_measure;
          row.candidate_count = pt.candidate_count;
          row.wall_time_ms = pt.wall_time_ms;
          rows.push_back(row);
        };
        for (double eps : cfg.sweep.epsilons) {
          emit("max_lift", optimal_lift_mechanism(joint, eps, m));
        }
        for (const SweepPoint& pt : band_search_sweep(joint, m, cfg.sweep)) {
          emit("band_search", pt);
        }
      }
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(inst)] = e.what();
    }
  }

  for (std::int64_t inst = 0; inst < cfg.num_instances; ++inst) {
    if (!failures[static_cast<std::size_t>(inst)].empty()) {
      throw InternalError("instance " + std::to_string(inst) + " (seed " +
                          std::to_string(mix_seed(cfg.seed, static_cast<std::uint64_t>(inst))) +
                          ") failed: " + failures[static_cast<std::size_t>(inst)]);
    }
  }

  std::vector<CsvRow> rows;
  for (auto& chunk : per_instance) {
    rows.insert(rows.end(), std::make_move_iterator(chunk.begin()),
                std::make_move_iterator(chunk.end()));
  }
  return rows;
}

std::vector<AggregateRow> aggregate_rows(const std::vector<CsvRow>& rows) {
  std::vector<AggregateRow> out;
  std::vector<int> counts;
  const auto find_slot = [&](const CsvRow& row) -> std::size_t {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].measure == row.measure && out[i].mechanism == row.mechanism &&
          out[i].epsilon == row.epsilon) {
        return i;
      }
    }
    AggregateRow agg;
    agg.measure = row.measure;
    agg.mechanism = row.mechanism;
    agg.epsilon = row.epsilon;
    out.push_back(std::move(agg));
    counts.push_back(0);
    return out.size() - 1;
  };
  for (const auto& row : rows) {
    const std::size_t i = find_slot(row);
    out[i].mean_utility_nats += row.utility_nats;
    out[i].mean_normalized_utility += row.normalized_utility;
    out[i].mean_leakage_mi_nats += row.leakage_mi_nats;
    out[i].mean_max_lift += row.max_lift;
    out[i].mean_log_max_lift += row.log_max_lift;
    out[i].mean_max_measure += row.max_measure;
    out[i].mean_candidate_count += static_cast<double>(row.candidate_count);
    out[i].mean_wall_time_ms += row.wall_time_ms;
    ++counts[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = static_cast<double>(counts[i]);
    out[i].mean_utility_nats /= n;
    out[i].mean_normalized_utility /= n;
    out[i].mean_leakage_mi_nats /= n;
    out[i].mean_max_lift /= n;
    out[i].mean_log_max_lift /= n;
    out[i].mean_max_measure /= n;
    out[i].mean_candidate_count /= n;
    out[i].mean_wall_time_ms /= n;
  }
  return out;
}

std::string aggregate_path(const std::string& output_path) {
  const auto dot = output_path.find_last_of('.');
  const auto slash = output_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return output_path + "_aggregate";
  }
  return output_path.substr(0, dot) + "_aggregate" + output_path.substr(dot);
}

void run_sweep(const ExperimentConfig& cfg) {
  const std::vector<CsvRow> rows = collect_sweep_rows(cfg);

  std::ofstream out(cfg.output_path);
  if (!out) throw IoError("cannot write '" + cfg.output_path + "'");
  out << "instance_id,measure,mechanism,epsilon,utility_nats,normalized_utility,"
         "leakage_mi_nats,max_lift,log_max_lift,max_measure,candidate_count,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.instance_id << ',' << measure_name(r.measure) << ',' << r.mechanism << ','
        << fmt17(r.epsilon) << ',' << fmt17(r.utility_nats) << ','
        << fmt17(r.normalized_utility) << ',' << fmt17(r.leakage_mi_nats) << ','
        << fmt17(r.max_lift) << ',' << fmt17(r.log_max_lift) << ',' << fmt17(r.max_measure)
        << ',' << r.candidate_count << ',' << fmt17(r.wall_time_ms) << '\n';
  }
  if (!out.flush()) throw IoError("write failed for '" + cfg.output_path + "'");

  const std::string agg_path = aggregate_path(cfg.output_path);
  std::ofstream agg(agg_path);
  if (!agg) throw IoError("cannot write '" + agg_path + "'");
  agg << "measure,mechanism,epsilon,mean_utility_nats,mean_normalized_utility,"
         "mean_leakage_mi_nats,mean_max_lift,mean_log_max_lift,mean_max_measure,"
         "mean_candidate_count,mean_wall_time_ms\n";
  for (const auto& r : aggregate_rows(rows)) {
    agg << measure_name(r.measure) << ',' << r.mechanism << ',' << fmt17(r.epsilon) << ','
        << fmt17(r.mean_utility_nats) << ',' << fmt17(r.mean_normalized_utility) << ','
        << fmt17(r.mean_leakage_mi_nats) << ',' << fmt17(r.mean_max_lift) << ','
        << fmt17(r.mean_log_max_lift) << ',' << fmt17(r.mean_max_measure) << ','
        << fmt17(r.mean_candidate_count) << ',' << fmt17(r.mean_wall_time_ms) << '\n';
  }
  if (!agg.flush()) throw IoError("write failed for '" + agg_path + "'");
}

std::vector<ValidationRow> validate_example1(std::vector<double> epsilons) {
  if (epsilons.empty()) throw OutOfRangeError("empty budget list");
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 0.07)) {
      throw OutOfRangeError("budgets must lie in (0, 0.07], got " + std::to_string(e));
    }
  }

  SweepConfig cfg;
  cfg.epsilons = epsilons;
  // Ladder spacing of at most 5e-5 keeps the harvested band within a few
  // 1e-4 nats of the closed form; see the validation tests.
  cfg.refinement_counts.assign(epsilons.size(), 100);
  cfg.refinement_counts.back() = 500;
  cfg.delta = 0.05;
  cfg.epsilon_end = 0.095;

  const JointDistribution joint = example1_joint();
  const std::vector<SweepPoint> sweep = band_search_sweep(joint, Measure::kChi2, cfg);

  std::vector<ValidationRow> out;
  out.reserve(sweep.size());
  for (const SweepPoint& pt : sweep) {
    const Mechanism ref = example1_mechanism(pt.epsilon);
    const UtilitySummary ref_util = mechanism_utility(joint, ref);
    const LeakageSummary ref_leak = mechanism_leakage(joint, ref);
    ValidationRow row;
    row.epsilon = pt.epsilon;
    row.utility = pt.utility;
    row.utility_reference = ref_util.mi_xy;
    row.utility_diff = std::abs(pt.utility - ref_util.mi_xy);
    row.max_chi2 = pt.max_measure;
    row.max_chi2_reference = ref_leak.max_chi2;
    row.max_lift = pt.max_lift;
    row.max_lift_reference = ref_leak.max_lift;
    row.flagged = row.utility_diff > kValidationTol;
    out.push_back(row);
  }
  return out;
}

std::string format_joint_matrix(const JointDistribution& joint) {
  std::string out;
  for (int s = 0; s < joint.s_size(); ++s) {
    for (int x = 0; x < joint.x_size(); ++x) {
      if (x) out += ' ';
      out += fmt17(joint.joint(s, x));
    }
    out += '\n';
  }
  return out;
}

}  // namespace liftmech
