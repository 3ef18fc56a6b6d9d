#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lcam/error.hpp"

namespace lcam {

enum class ScheduleKind { Constant, StepDrop, PerIterationDecay };

inline const char* to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::StepDrop: return "step_drop";
    case ScheduleKind::PerIterationDecay: return "per_iteration_decay";
  }
  return "?";
}

// Position inside a run. Epochs are 1-based ("epoch 30" is the thirtieth);
// iteration_in_epoch is 0-based; global_iteration counts completed
// iterations across all epochs.
struct ScheduleState {
  int epoch = 1;
  std::int64_t iteration_in_epoch = 0;
  std::int64_t global_iteration = 0;
  std::int64_t iterations_per_epoch = 1;

  static ScheduleState start(std::int64_t iterations_per_epoch) {
    if (iterations_per_epoch < 1) throw ConfigError("iterations_per_epoch must be >= 1");
    return {1, 0, 0, iterations_per_epoch};
  }

  void next_iteration() {
    ++iteration_in_epoch;
    ++global_iteration;
    if (iteration_in_epoch == iterations_per_epoch) {
      iteration_in_epoch = 0;
      ++epoch;
    }
  }
};

// Piecewise-constant drop schedule: lr = base_lr * factor^(#drop_epochs <= epoch).
inline double step_drop_lr(int epoch, double base_lr, const std::vector<int>& drop_epochs,
                           double factor) {
  if (!(base_lr > 0.0)) throw ConfigError("base_lr must be positive");
  if (!(factor > 0.0 && factor < 1.0)) throw ConfigError("drop factor must lie in (0,1)");
  for (std::size_t i = 1; i < drop_epochs.size(); ++i) {
    if (drop_epochs[i] <= drop_epochs[i - 1]) {
      throw ConfigError("drop_epochs must be strictly increasing");
    }
  }
  int drops = 0;
  for (int e : drop_epochs) {
    if (e <= epoch) ++drops;
  }
  return base_lr * std::pow(factor, drops);
}

// Warmup epochs run at base_lr; from the first iteration of epoch
// warmup_epochs+1 the rate shrinks by `decay` every iteration. Closed form:
// lr = base_lr * decay^k with k the number of decayed iterations so far
// (the first decayed iteration has k = 1).
inline double per_iteration_decay_lr(const ScheduleState& state, int warmup_epochs = 30,
                                     double decay = 0.99985, double base_lr = 0.1) {
  if (!(base_lr > 0.0)) throw ConfigError("base_lr must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("decay must lie in (0,1)");
  if (warmup_epochs < 0) throw ConfigError("warmup_epochs must be nonnegative");
  if (state.epoch <= warmup_epochs) return base_lr;
  const std::int64_t k =
      (static_cast<std::int64_t>(state.epoch) - warmup_epochs - 1) * state.iterations_per_epoch +
      state.iteration_in_epoch + 1;
  return base_lr * std::pow(decay, static_cast<double>(k));
}

// Repeated-multiplication form of the same schedule, kept for
// bit-compatibility checks against the closed form.
inline double per_iteration_decay_lr_iterative(std::int64_t decayed_iterations,
                                               double decay = 0.99985, double base_lr = 0.1) {
  if (!(base_lr > 0.0)) throw ConfigError("base_lr must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("decay must lie in (0,1)");
  double lr = base_lr;
  for (std::int64_t i = 0; i < decayed_iterations; ++i) lr *= decay;
  return lr;
}

}  // namespace lcam
