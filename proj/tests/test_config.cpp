#include <doctest.h>

#include <string>
#include <vector>

#include "lcam/config.hpp"
#include "lcam/error.hpp"
#include "lcam/rng.hpp"

using namespace lcam;

namespace {

const char* kMinimal = R"(
[problem]
kind = landscape
landscape = rosenbrock

[optimizer]
kind = sgd
beta = 0.9

[schedule]
kind = constant
base_lr = 0.01

[run]
epochs = 1
)";

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
  const ExperimentConfig c = parse_config(kMinimal);
  CHECK(c.problem.kind == ProblemKind::Landscape);
  CHECK(c.problem.landscape_id == "rosenbrock");
  CHECK(c.problem.iterations_per_epoch == 100);
  CHECK(c.optimizer.kind == OptimizerKind::Sgd);
  CHECK(c.optimizer.beta == 0.9);
  CHECK(c.optimizer.weight_decay == 0.0);  // landscape default
  CHECK(c.schedule.kind == ScheduleKind::Constant);
  CHECK(c.schedule.base_lr == 0.01);
  CHECK(c.tracker.mode == TrackerMode::Window);
  CHECK(c.tracker.window == 0);
  CHECK(c.run.epochs == 1);
  CHECK(c.run.seed == 42);
  CHECK(!c.run.loss_threshold.has_value());
}

TEST_CASE("weight decay defaults to 5e-4 on dataset problems") {
  const std::string text = R"(
[problem]
kind = dataset
dataset = two_moons

[optimizer]
kind = lcam

[schedule]
kind = constant

[run]
epochs = 2
)";
  const ExperimentConfig c = parse_config(text);
  CHECK(c.optimizer.weight_decay == 5e-4);
  CHECK(c.optimizer.beta_sparse == 0.9);
  CHECK(c.optimizer.beta_nonsparse == 0.95);
  CHECK(c.problem.batch_size == 32);
  CHECK(c.problem.layers == std::vector<int>{2, 16, 16, 2});
}

TEST_CASE("out-of-range values are rejected with the key name") {
  const std::string text = R"(
[problem]
kind = dataset

[optimizer]
kind = lcam
beta_sparse = 1.5

[schedule]
kind = constant

[run]
epochs = 1
)";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("beta_sparse") != std::string::npos);
  }
}

TEST_CASE("unknown keys and sections are fatal") {
  CHECK_THROWS_AS(parse_config("[problem]\nkind = landscape\nlandscapee = rosenbrock\n"
                               "[optimizer]\nkind = sgd\n[schedule]\nkind = constant\n"
                               "[run]\nepochs = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[problems]\nkind = landscape\n"), ConfigError);
  // keys from another optimizer kind are inapplicable, not silently ignored
  CHECK_THROWS_AS(parse_config("[problem]\nkind = landscape\n"
                               "[optimizer]\nkind = adam\nbeta = 0.9\n"
                               "[schedule]\nkind = constant\n[run]\nepochs = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nkind = landscape\n"
                               "[optimizer]\nkind = sgd\nbeta = 0.9\nbeta = 0.9\n"
                               "[schedule]\nkind = constant\n[run]\nepochs = 1\n"),
                  ConfigError);
}

TEST_CASE("malformed syntax is reported with line info") {
  try {
    parse_config("[problem\nkind = landscape\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("kind = landscape\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\njust a line\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nkind = landscape\niterations_per_epoch = abc\n"),
                  ConfigError);
}

TEST_CASE("missing config file raises an io error") {
  CHECK_THROWS_AS(load_config("/nonexistent/path/x.conf"), IoError);
}

namespace {

// Random but valid config, exercising every kind combination.
ExperimentConfig random_config(Rng& rng) {
  ExperimentConfig c;
  if (rng.uniform() < 0.5) {
    c.problem.kind = ProblemKind::Landscape;
    const std::vector<std::string> ids{"quadratic", "saddle", "coupled_spring", "rosenbrock"};
    c.problem.landscape_id = ids[rng.uniform_int(ids.size())];
    c.problem.iterations_per_epoch = 1 + static_cast<std::int64_t>(rng.uniform_int(500));
    c.problem.gradient_noise = rng.uniform(0.0, 2.0);
    c.problem.init_scale = rng.uniform(0.1, 3.0);
    if (c.problem.landscape_id == "quadratic") {
      c.problem.quad_scales = {rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
    }
    if (c.problem.landscape_id == "coupled_spring") {
      c.problem.spring_pairs = 1 + static_cast<std::int64_t>(rng.uniform_int(8));
      c.problem.spring_stiff = rng.uniform(2.0, 30.0);
      c.problem.spring_soft = rng.uniform(0.1, 2.0);
      c.problem.spring_coupling = rng.uniform(0.0, 0.3);
    }
  } else {
    c.problem.kind = ProblemKind::Dataset;
    const double pick = rng.uniform();
    if (pick < 0.45) {
      c.problem.dataset = DatasetKind::TwoMoons;
      c.problem.moons_n = 10 + static_cast<int>(rng.uniform_int(1000));
      c.problem.moons_noise = rng.uniform(0.0, 0.5);
    } else if (pick < 0.9) {
      c.problem.dataset = DatasetKind::Blobs;
      c.problem.blob_classes = 2 + static_cast<int>(rng.uniform_int(5));
      c.problem.blob_per_class = 1 + static_cast<int>(rng.uniform_int(200));
      c.problem.blob_spread = rng.uniform(0.0, 2.0);
    } else {
      c.problem.dataset = DatasetKind::Csv;
      c.problem.csv_path = "some/data.csv";
      c.problem.csv_classes = 2 + static_cast<int>(rng.uniform_int(5));
    }
    c.problem.layers = {2, 4 + static_cast<int>(rng.uniform_int(20)), 3};
    c.problem.batch_size = 1 + static_cast<int>(rng.uniform_int(128));
  }

  const double opt = rng.uniform();
  if (opt < 0.25) {
    c.optimizer.kind = OptimizerKind::Sgd;
    c.optimizer.beta = rng.uniform(0.01, 0.99);
    c.optimizer.weight_decay = rng.uniform(0.0, 0.01);
  } else if (opt < 0.5) {
    c.optimizer.kind = OptimizerKind::Lcam;
    c.optimizer.beta_sparse = rng.uniform(0.01, 0.99);
    c.optimizer.beta_nonsparse = rng.uniform(0.01, 0.99);
    c.optimizer.weight_decay = rng.uniform(0.0, 0.01);
  } else if (opt < 0.75) {
    c.optimizer.kind = OptimizerKind::AdaGrad;
    c.optimizer.eps = rng.uniform(1e-10, 1e-6);
  } else {
    c.optimizer.kind = OptimizerKind::Adam;
    c.optimizer.beta1 = rng.uniform(0.5, 0.99);
    c.optimizer.beta2 = rng.uniform(0.9, 0.9999);
    c.optimizer.eps = rng.uniform(1e-10, 1e-6);
  }

  const double sched = rng.uniform();
  c.schedule.base_lr = rng.uniform(1e-4, 0.5);
  if (sched < 0.34) {
    c.schedule.kind = ScheduleKind::Constant;
  } else if (sched < 0.67) {
    c.schedule.kind = ScheduleKind::StepDrop;
    c.schedule.drop_epochs = {10, 20, 40};
    c.schedule.drop_factor = rng.uniform(0.05, 0.95);
  } else {
    c.schedule.kind = ScheduleKind::PerIterationDecay;
    c.schedule.warmup_epochs = static_cast<int>(rng.uniform_int(50));
    c.schedule.decay = rng.uniform(0.9, 0.99999);
  }

  const double tr = rng.uniform();
  if (tr < 0.34) {
    c.tracker.mode = TrackerMode::Cumulative;
  } else if (tr < 0.67) {
    c.tracker.mode = TrackerMode::Window;
    c.tracker.window = static_cast<std::int64_t>(rng.uniform_int(300));
  } else {
    c.tracker.mode = TrackerMode::Ema;
    c.tracker.alpha = rng.uniform(0.01, 0.99);
  }

  c.run.epochs = 1 + static_cast<int>(rng.uniform_int(300));
  c.run.seed = rng.next_u64();
  c.run.output = "out/trace_" + std::to_string(rng.uniform_int(1000)) + ".csv";
  if (rng.uniform() < 0.5) c.run.loss_threshold = rng.uniform(-1.0, 1.0);
  return c;
}

}  // namespace

TEST_CASE("serialize-then-parse round-trips generated configs") {
  Rng rng(20240101);
  for (int trial = 0; trial < 200; ++trial) {
    const ExperimentConfig c = random_config(rng);
    const std::string text = serialize_config(c);
    const ExperimentConfig back = parse_config(text);
    CHECK(back == c);
    // serialization is a fixed point
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("overrides reach into sections before validation") {
  const ExperimentConfig base = parse_config(kMinimal);
  const ExperimentConfig swapped =
      parse_config_with_overrides(kMinimal, {{"optimizer.beta", "0.5"}, {"run.epochs", "7"}});
  CHECK(base.optimizer.beta == 0.9);
  CHECK(swapped.optimizer.beta == 0.5);
  CHECK(swapped.run.epochs == 7);
  CHECK_THROWS_AS(parse_config_with_overrides(kMinimal, {{"nosuch.key", "1"}}), ConfigError);
  CHECK_THROWS_AS(parse_config_with_overrides(kMinimal, {{"optimizer.beta", "2.0"}}),
                  ConfigError);
}

TEST_CASE("problem ids distinguish problems and stay stable across equal configs") {
  const ExperimentConfig a = parse_config(kMinimal);
  const ExperimentConfig b = parse_config(kMinimal);
  CHECK(a.problem.id() == b.problem.id());

  const ExperimentConfig c =
      parse_config_with_overrides(kMinimal, {{"problem.landscape", "saddle"}});
  CHECK(a.problem.id() != c.problem.id());
}
