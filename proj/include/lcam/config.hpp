#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcam/optimizers.hpp"
#include "lcam/schedules.hpp"

namespace lcam {

enum class ProblemKind { Landscape, Dataset };
enum class DatasetKind { TwoMoons, Blobs, Csv };
enum class OptimizerKind { Sgd, Lcam, AdaGrad, Adam };

struct ProblemConfig {
  ProblemKind kind = ProblemKind::Landscape;

  // landscape problems
  std::string landscape_id = "rosenbrock";
  std::int64_t iterations_per_epoch = 100;
  double gradient_noise = 0.0;
  std::vector<double> theta0;  // empty: drawn uniformly from [-init_scale, init_scale]
  double init_scale = 2.0;
  std::vector<double> quad_scales = {1.0, 100.0};
  std::int64_t spring_pairs = 5;
  double spring_stiff = 10.0;
  double spring_soft = 1.0;
  double spring_coupling = 2.0;

  // dataset problems
  DatasetKind dataset = DatasetKind::TwoMoons;
  int moons_n = 500;
  double moons_noise = 0.1;
  int blob_classes = 3;
  int blob_per_class = 100;
  double blob_spread = 1.0;
  std::string csv_path;
  int csv_classes = 2;
  std::vector<int> layers = {2, 16, 16, 2};
  int batch_size = 32;

  bool operator==(const ProblemConfig&) const = default;

  // Compact identity used to decide whether two traces are comparable.
  std::string id() const;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Sgd;
  double beta = 0.9;            // sgd
  double beta_sparse = 0.9;     // lcam
  double beta_nonsparse = 0.95; // lcam
  double weight_decay = 0.0;    // sgd/lcam; default 5e-4 on datasets, 0 on landscapes
  double eps = 1e-8;            // adagrad/adam
  double beta1 = 0.9;           // adam
  double beta2 = 0.999;         // adam

  bool operator==(const OptimizerConfig&) const = default;

  std::string id() const;
};

struct ScheduleConfig {
  ScheduleKind kind = ScheduleKind::Constant;
  double base_lr = 0.1;
  std::vector<int> drop_epochs = {30, 60, 90};  // step_drop
  double drop_factor = 0.2;                     // step_drop
  int warmup_epochs = 30;                       // per_iteration_decay
  double decay = 0.99985;                       // per_iteration_decay

  bool operator==(const ScheduleConfig&) const = default;
};

struct TrackerConfig {
  TrackerMode mode = TrackerMode::Window;
  std::int64_t window = 0;  // 0: one epoch's worth of iterations
  double alpha = 0.1;       // ema

  bool operator==(const TrackerConfig&) const = default;
};

struct RunConfig {
  int epochs = 150;
  std::uint64_t seed = 42;
  std::string output = "trace.csv";
  std::optional<double> loss_threshold;  // reports' iterations-to-threshold

  bool operator==(const RunConfig&) const = default;
};

struct ExperimentConfig {
  ProblemConfig problem;
  OptimizerConfig optimizer;
  ScheduleConfig schedule;
  TrackerConfig tracker;
  RunConfig run;

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses the key = value / [section] config format. Unknown sections, unknown
// keys, keys that do not apply to the selected kinds, bad types and violated
// ranges all raise ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& text);

// parse_config plus "section.key" overrides applied before validation.
ExperimentConfig parse_config_with_overrides(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides);

ExperimentConfig load_config(const std::string& path);

// Serializes with every resolved value written out, so
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

void save_config(const ExperimentConfig& config, const std::string& path);

const char* to_string(ProblemKind k);
const char* to_string(DatasetKind k);
const char* to_string(OptimizerKind k);

}  // namespace lcam
