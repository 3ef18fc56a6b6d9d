#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcam/config.hpp"
#include "lcam/trace.hpp"
#include "lcam/types.hpp"

namespace lcam {

enum class RunStatus { Completed, Diverged };

struct RunResult {
  RunTrace trace;
  RunStatus status = RunStatus::Completed;
  // Global iteration (1-based) of the last record before divergence; 0 when
  // the very first loss was already non-finite.
  std::int64_t last_good_iteration = 0;
  Vecd final_params;
};

// Executes one experiment: builds the problem from the config, wires the
// optimizer, schedule and phase tracker, and logs one TraceRecord per
// iteration. Deterministic in (config, seed) except for wall_ms. A
// non-finite loss aborts the run with RunStatus::Diverged and the records
// collected so far.
RunResult run_experiment(const ExperimentConfig& config);

// The four-momentum comparison (two fixed, two asymmetric) on a named
// problem: "coupled_spring", "quadratic", "saddle", "rosenbrock",
// "two_moons" or "blobs". Returns (label, config) pairs sharing one seed.
std::vector<std::pair<std::string, ExperimentConfig>> four_group_preset(
    const std::string& problem_id, std::uint64_t seed = 42);

// Applies the LCAM_OUT_DIR override: when the variable is set, the
// configured file name is redirected into that directory.
std::string resolve_output_path(const std::string& configured);

}  // namespace lcam
