#include "lcam/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "lcam/dataset_io.hpp"
#include "lcam/error.hpp"
#include "lcam/landscapes.hpp"
#include "lcam/rng.hpp"
#include "lcam/schedules.hpp"
#include "lcam/tinynet.hpp"

namespace lcam {

namespace {

// rng stream tags
constexpr std::uint64_t kThetaStream = 0x7E7A0;
constexpr std::uint64_t kNoiseStream = 0x4015E;
constexpr std::uint64_t kEpochStream = 0xE90C4;

Landscape build_landscape(const ProblemConfig& p) {
  if (p.landscape_id == "quadratic") {
    Vecd s(static_cast<Index>(p.quad_scales.size()));
    for (std::size_t i = 0; i < p.quad_scales.size(); ++i) s[static_cast<Index>(i)] = p.quad_scales[i];
    return make_quadratic(std::move(s));
  }
  if (p.landscape_id == "coupled_spring") {
    CoupledSpringParams<double> sp;
    sp.pairs = p.spring_pairs;
    sp.stiff_scale = p.spring_stiff;
    sp.soft_scale = p.spring_soft;
    sp.coupling = p.spring_coupling;
    return make_coupled_spring(sp);
  }
  return make_landscape(p.landscape_id);
}

double schedule_lr(const ScheduleConfig& s, const ScheduleState& state) {
  switch (s.kind) {
    case ScheduleKind::Constant:
      return s.base_lr;
    case ScheduleKind::StepDrop:
      return step_drop_lr(state.epoch, s.base_lr, s.drop_epochs, s.drop_factor);
    case ScheduleKind::PerIterationDecay:
      return per_iteration_decay_lr(state, s.warmup_epochs, s.decay, s.base_lr);
  }
  return s.base_lr;
}

PhaseTracker<double> build_tracker(const TrackerConfig& t, std::int64_t iterations_per_epoch) {
  switch (t.mode) {
    case TrackerMode::Cumulative:
      return PhaseTracker<double>::cumulative();
    case TrackerMode::Window:
      return PhaseTracker<double>::window(t.window > 0 ? t.window : iterations_per_epoch);
    case TrackerMode::Ema:
      return PhaseTracker<double>::ema(t.alpha);
  }
  return PhaseTracker<double>::cumulative();
}

// Shared per-iteration state machine: applies one optimizer step, keeps the
// lag-one phase bookkeeping identical for every optimizer kind, and returns
// the record fields. The phase recorded is the one whose momentum acted on
// this step.
struct Stepper {
  const OptimizerConfig& opt;
  PhaseTracker<double>& tracker;
  MomentumState<double> momentum;
  AdaGradState<double> adagrad;
  AdamState<double> adam;

  Stepper(const OptimizerConfig& o, PhaseTracker<double>& t, Index dim)
      : opt(o),
        tracker(t),
        momentum(MomentumState<double>::zero(dim)),
        adagrad(AdaGradState<double>::zero(dim)),
        adam(AdamState<double>::zero(dim)) {}

  std::pair<double, Phase> step(Vecd& params, const Vecd& grads, double lr, double loss) {
    const Phase applied = tracker.current_phase();
    double beta_applied = 0.0;
    switch (opt.kind) {
      case OptimizerKind::Sgd:
        sgd_momentum_step(params, grads, momentum, lr, opt.beta, opt.weight_decay);
        beta_applied = opt.beta;
        break;
      case OptimizerKind::Lcam: {
        const LcamConfig<double> cfg{opt.beta_sparse, opt.beta_nonsparse, opt.weight_decay};
        beta_applied = lcam_step(params, grads, momentum, tracker, lr, cfg, loss).beta_applied;
        break;
      }
      case OptimizerKind::AdaGrad:
        adagrad_step(params, grads, adagrad, lr, opt.eps);
        break;
      case OptimizerKind::Adam:
        adam_step(params, grads, adam, lr, opt.beta1, opt.beta2, opt.eps);
        beta_applied = opt.beta1;
        break;
    }
    if (opt.kind != OptimizerKind::Lcam) {
      tracker.observe(loss);
      tracker.set_phase(classify_phase(loss, tracker.mean_loss()));
    }
    return {beta_applied, applied};
  }
};

struct WallClock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

RunResult run_landscape(const ExperimentConfig& cfg) {
  const ProblemConfig& p = cfg.problem;
  const Landscape land = build_landscape(p);

  Vecd theta;
  if (!p.theta0.empty()) {
    if (static_cast<Index>(p.theta0.size()) != land.dimension) {
      throw ConfigError("theta0 length " + std::to_string(p.theta0.size()) +
                        " does not match landscape dimension " + std::to_string(land.dimension));
    }
    theta.resize(land.dimension);
    for (Index i = 0; i < land.dimension; ++i) theta[i] = p.theta0[static_cast<std::size_t>(i)];
  } else {
    Rng init_rng(mix_seed(cfg.run.seed, kThetaStream));
    theta.resize(land.dimension);
    for (Index i = 0; i < land.dimension; ++i) {
      theta[i] = init_rng.uniform(-p.init_scale, p.init_scale);
    }
  }

  Rng noise_rng(mix_seed(cfg.run.seed, kNoiseStream));
  PhaseTracker<double> tracker = build_tracker(cfg.tracker, p.iterations_per_epoch);
  Stepper stepper(cfg.optimizer, tracker, land.dimension);
  WallClock clock;

  RunResult result;
  result.trace.label = cfg.optimizer.id();
  result.trace.problem_id = p.id();
  result.trace.optimizer_id = cfg.optimizer.id();
  result.trace.seed = cfg.run.seed;
  auto& records = result.trace.records;
  records.reserve(static_cast<std::size_t>(cfg.run.epochs) * p.iterations_per_epoch);

  Vecd grads(land.dimension);
  std::int64_t global = 0;
  for (int epoch = 1; epoch <= cfg.run.epochs; ++epoch) {
    for (std::int64_t it = 0; it < p.iterations_per_epoch; ++it) {
      const double loss = theta.allFinite() ? land.eval(theta)
                                            : std::numeric_limits<double>::quiet_NaN();
      if (!std::isfinite(loss)) {
        result.status = RunStatus::Diverged;
        result.last_good_iteration = global;
        result.final_params = theta;
        return result;
      }
      grads = land.grad(theta);
      if (p.gradient_noise > 0.0) {
        for (Index i = 0; i < grads.size(); ++i) {
          grads[i] += p.gradient_noise * noise_rng.normal();
        }
      }
      const ScheduleState st{epoch, it, global, p.iterations_per_epoch};
      const double lr = schedule_lr(cfg.schedule, st);
      const auto [beta_applied, phase] = stepper.step(theta, grads, lr, loss);
      ++global;
      records.push_back({epoch, global, lr, loss, tracker.mean_loss(), phase, beta_applied,
                         std::nullopt, clock.elapsed_ms()});
    }
  }
  result.last_good_iteration = global;
  result.final_params = theta;
  return result;
}

RunResult run_dataset(const ExperimentConfig& cfg) {
  const ProblemConfig& p = cfg.problem;
  Dataset ds;
  switch (p.dataset) {
    case DatasetKind::TwoMoons:
      ds = generate_two_moons(p.moons_n, p.moons_noise, cfg.run.seed);
      break;
    case DatasetKind::Blobs:
      ds = generate_blobs(p.blob_classes, p.blob_per_class, p.blob_spread, cfg.run.seed);
      break;
    case DatasetKind::Csv:
      ds = load_csv_dataset(p.csv_path, p.csv_classes, cfg.run.seed);
      break;
  }
  if (p.layers.front() != ds.feature_dim()) {
    throw ConfigError("layers input size " + std::to_string(p.layers.front()) +
                      " does not match feature dimension " + std::to_string(ds.feature_dim()));
  }
  if (p.layers.back() != ds.classes) {
    throw ConfigError("layers output size " + std::to_string(p.layers.back()) +
                      " does not match class count " + std::to_string(ds.classes));
  }
  if (ds.train_idx.empty()) throw DataError("dataset has an empty training split");

  MlpModel model = init_mlp(p.layers, cfg.run.seed);
  const std::int64_t ipe =
      (static_cast<std::int64_t>(ds.train_idx.size()) + p.batch_size - 1) / p.batch_size;
  PhaseTracker<double> tracker = build_tracker(cfg.tracker, ipe);
  Stepper stepper(cfg.optimizer, tracker, model.parameter_count());
  WallClock clock;

  RunResult result;
  result.trace.label = cfg.optimizer.id();
  result.trace.problem_id = p.id();
  result.trace.optimizer_id = cfg.optimizer.id();
  result.trace.seed = cfg.run.seed;
  auto& records = result.trace.records;
  records.reserve(static_cast<std::size_t>(cfg.run.epochs) * ipe);

  Vecd grads(model.parameter_count());
  std::int64_t global = 0;
  for (int epoch = 1; epoch <= cfg.run.epochs; ++epoch) {
    std::vector<Index> order = ds.train_idx;
    Rng shuffle_rng(mix_seed(cfg.run.seed, kEpochStream + static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    for (std::int64_t it = 0, b = 0; b < static_cast<std::int64_t>(order.size());
         b += p.batch_size, ++it) {
      const std::int64_t sz =
          std::min<std::int64_t>(p.batch_size, static_cast<std::int64_t>(order.size()) - b);
      Matd x(sz, ds.feature_dim());
      std::vector<int> y(static_cast<std::size_t>(sz));
      for (std::int64_t k = 0; k < sz; ++k) {
        x.row(k) = ds.features.row(order[static_cast<std::size_t>(b + k)]);
        y[static_cast<std::size_t>(k)] = ds.labels[order[static_cast<std::size_t>(b + k)]];
      }

      const double loss = model.params.allFinite()
                              ? forward_loss(model, x, y, grads)
                              : std::numeric_limits<double>::quiet_NaN();
      if (!std::isfinite(loss)) {
        result.status = RunStatus::Diverged;
        result.last_good_iteration = global;
        result.final_params = model.params;
        return result;
      }
      const ScheduleState st{epoch, it, global, ipe};
      const double lr = schedule_lr(cfg.schedule, st);
      const auto [beta_applied, phase] = stepper.step(model.params, grads, lr, loss);
      ++global;
      records.push_back({epoch, global, lr, loss, tracker.mean_loss(), phase, beta_applied,
                         std::nullopt, clock.elapsed_ms()});
    }
    if (!ds.test_idx.empty()) {
      records.back().test_error = evaluate(model, ds, ds.test_idx);
    }
  }
  result.last_good_iteration = global;
  result.final_params = model.params;
  return result;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  return config.problem.kind == ProblemKind::Landscape ? run_landscape(config)
                                                       : run_dataset(config);
}

std::vector<std::pair<std::string, ExperimentConfig>> four_group_preset(
    const std::string& problem_id, std::uint64_t seed) {
  ExperimentConfig base;
  base.run.seed = seed;
  base.schedule.kind = ScheduleKind::StepDrop;
  base.schedule.base_lr = 0.1;
  base.schedule.drop_epochs = {30, 60, 90};
  base.schedule.drop_factor = 0.2;
  base.tracker.mode = TrackerMode::Window;
  base.tracker.window = 0;

  if (problem_id == "two_moons" || problem_id == "blobs") {
    base.problem.kind = ProblemKind::Dataset;
    base.problem.dataset =
        problem_id == "two_moons" ? DatasetKind::TwoMoons : DatasetKind::Blobs;
    base.problem.layers = {2, 16, 16, problem_id == "blobs" ? base.problem.blob_classes : 2};
    base.run.epochs = 120;
    base.run.loss_threshold = 0.02;
  } else if (problem_id == "coupled_spring") {
    base.problem.kind = ProblemKind::Landscape;
    base.problem.landscape_id = "coupled_spring";
    base.problem.iterations_per_epoch = 50;
    base.problem.gradient_noise = 0.5;
    base.run.epochs = 150;
    base.run.loss_threshold = 0.05;
  } else if (problem_id == "quadratic" || problem_id == "saddle" ||
             problem_id == "rosenbrock") {
    base.problem.kind = ProblemKind::Landscape;
    base.problem.landscape_id = problem_id;
    base.problem.iterations_per_epoch = 50;
    base.problem.gradient_noise = 0.1;
    base.run.epochs = 150;
    if (problem_id == "quadratic") {
      base.schedule.base_lr = 0.01;
      base.run.loss_threshold = 0.01;
    } else if (problem_id == "rosenbrock") {
      base.schedule.base_lr = 0.001;
      base.problem.theta0 = {-1.2, 1.0};
      base.run.loss_threshold = 1.0;
    } else {
      base.schedule.base_lr = 0.05;
      base.run.loss_threshold = -0.2;  // near the confined minima at -1/4
    }
  } else {
    throw ConfigError("four-group preset: unknown problem id '" + problem_id + "'");
  }

  const double wd = base.problem.kind == ProblemKind::Dataset ? 5e-4 : 0.0;
  std::vector<std::pair<std::string, ExperimentConfig>> groups;
  const auto add = [&](const std::string& label, OptimizerKind kind, double a, double b) {
    ExperimentConfig c = base;
    c.optimizer = OptimizerConfig{};
    c.optimizer.kind = kind;
    c.optimizer.weight_decay = wd;
    if (kind == OptimizerKind::Sgd) {
      c.optimizer.beta = a;
    } else {
      c.optimizer.beta_sparse = a;
      c.optimizer.beta_nonsparse = b;
    }
    c.run.output = "four_group_" + problem_id + "_" + label + ".csv";
    groups.emplace_back(label, std::move(c));
  };
  add("fixed-0.9", OptimizerKind::Sgd, 0.9, 0.0);
  add("fixed-0.95", OptimizerKind::Sgd, 0.95, 0.0);
  add("sparse-accel", OptimizerKind::Lcam, 0.95, 0.9);
  add("nonsparse-accel", OptimizerKind::Lcam, 0.9, 0.95);
  return groups;
}

std::string resolve_output_path(const std::string& configured) {
  const char* dir = std::getenv("LCAM_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return configured;
  const std::size_t slash = configured.find_last_of('/');
  const std::string base =
      slash == std::string::npos ? configured : configured.substr(slash + 1);
  std::string d(dir);
  if (!d.empty() && d.back() == '/') d.pop_back();
  return d + "/" + base;
}

}  // namespace lcam
