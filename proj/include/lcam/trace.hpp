#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcam/optimizers.hpp"

namespace lcam {

// One logged iteration. `phase` is the phase whose momentum was applied this
// step, so it always matches beta_applied under the run's LcamConfig;
// `mean_loss` is the tracker mean after absorbing this iteration's loss.
// test_error is present on the last iteration of an epoch for dataset
// problems. wall_ms holds elapsed wall time since the run started and is the
// only column allowed to differ between identical runs.
struct TraceRecord {
  int epoch = 0;
  std::int64_t global_iteration = 0;
  double lr = 0.0;
  double loss = 0.0;
  double mean_loss = 0.0;
  Phase phase = Phase::Sparse;
  double beta_applied = 0.0;
  std::optional<double> test_error;
  std::int64_t wall_ms = 0;
};

// A trace plus enough run identity to decide comparability.
struct RunTrace {
  std::string label;
  std::string problem_id;
  std::string optimizer_id;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
};

inline constexpr const char* kTraceCsvHeader =
    "epoch,global_iteration,lr,loss,mean_loss,phase,beta_applied,test_error,wall_ms";

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path);

std::vector<TraceRecord> read_trace_csv(const std::string& path);

// Fractions of iterations spent in each phase. The first record applies the
// default first-step momentum rather than a loss decision, so occupancy is
// computed over records 2..n; a trace with fewer than two records has no
// decided iterations and is rejected.
std::pair<double, double> phase_occupancy(const std::vector<TraceRecord>& trace);

struct RunSummary {
  std::string label;
  double final_loss = 0.0;
  std::optional<double> best_test_error;
  std::optional<int> best_epoch;
  std::optional<std::int64_t> iterations_to_threshold;
  std::optional<double> sparse_fraction;
  std::optional<double> nonsparse_fraction;
};

struct ComparisonReport {
  double loss_threshold = 0.0;
  std::vector<RunSummary> rows;
};

// Summarizes >= 2 traces over the same problem; iterations_to_threshold is
// the first global_iteration whose loss drops below loss_threshold.
ComparisonReport compare_runs(const std::vector<RunTrace>& traces, double loss_threshold);

std::string format_report(const ComparisonReport& report);

void write_report_csv(const ComparisonReport& report, const std::string& path);

}  // namespace lcam
