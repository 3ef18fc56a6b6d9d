#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "lcam/landscapes.hpp"
#include "lcam/optimizers.hpp"
#include "lcam/rng.hpp"
#include "reference.hpp"

using namespace lcam;

namespace {

Vecd to_vec(const std::vector<double>& v) {
  Vecd out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = v[i];
  return out;
}

}  // namespace

TEST_CASE("sgd first step from zero velocity is plain gradient descent") {
  Vecd theta = to_vec({0.0});
  Vecd g = to_vec({1.0});
  auto state = MomentumState<double>::zero(1);
  sgd_momentum_step(theta, g, state, 0.1, 0.9, 0.0);
  CHECK(theta[0] == -0.1);
  CHECK(state.velocity[0] == 1.0);
  CHECK(state.step_count == 1);
}

TEST_CASE("sgd decays velocity with zero gradient") {
  Vecd theta = to_vec({0.0});
  Vecd g = to_vec({0.0});
  auto state = MomentumState<double>::zero(1);
  state.velocity[0] = 1.0;
  sgd_momentum_step(theta, g, state, 0.1, 0.9, 0.0);
  CHECK(theta[0] == doctest::Approx(-0.09).epsilon(1e-15));
  CHECK(state.velocity[0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("sgd applies coupled weight decay before the velocity update") {
  Vecd theta = to_vec({2.0});
  Vecd g = to_vec({1.0});
  auto state = MomentumState<double>::zero(1);
  sgd_momentum_step(theta, g, state, 0.1, 0.9, 0.5);
  // g' = 1 + 0.5*2 = 2, v = 2, theta = 2 - 0.2
  CHECK(state.velocity[0] == 2.0);
  CHECK(theta[0] == 1.8);
}

TEST_CASE("sgd momentum matches the scalar reference over 1000 Rosenbrock steps") {
  const Landscape rosen = make_rosenbrock(2);
  Vecd theta = to_vec({-1.2, 1.0});
  auto state = MomentumState<double>::zero(2);

  std::vector<double> ref_theta{-1.2, 1.0};
  std::vector<double> ref_v{0.0, 0.0};

  for (int step = 0; step < 1000; ++step) {
    const Vecd g = rosen.grad(theta);
    sgd_momentum_step(theta, g, state, 0.001, 0.9, 0.0);
    ref::sgd_step(ref_theta, ref::rosenbrock_grad(ref_theta), ref_v, 0.001, 0.9, 0.0);
  }
  CHECK(theta[0] == ref_theta[0]);
  CHECK(theta[1] == ref_theta[1]);
  CHECK(state.velocity[0] == ref_v[0]);
  CHECK(state.velocity[1] == ref_v[1]);
  CHECK(theta.allFinite());
}

TEST_CASE("sgd rejects mismatched and non-finite inputs") {
  Vecd theta = to_vec({0.0, 0.0});
  auto state = MomentumState<double>::zero(2);
  Vecd short_g = to_vec({1.0});
  CHECK_THROWS_AS(sgd_momentum_step(theta, short_g, state, 0.1, 0.9, 0.0), DimensionError);

  Vecd bad_g = to_vec({0.0, std::nan("")});
  try {
    sgd_momentum_step(theta, bad_g, state, 0.1, 0.9, 0.0);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }

  Vecd g = to_vec({1.0, 1.0});
  CHECK_THROWS_AS(sgd_momentum_step(theta, g, state, 0.0, 0.9, 0.0), ConfigError);
  CHECK_THROWS_AS(sgd_momentum_step(theta, g, state, 0.1, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(sgd_momentum_step(theta, g, state, 0.1, 0.9, -1.0), ConfigError);
}

TEST_CASE("classify_phase follows the strict-inequality rule") {
  CHECK(classify_phase(0.5, 1.0) == Phase::Sparse);
  CHECK(classify_phase(1.0, 1.0) == Phase::NonSparse);
  CHECK(classify_phase(2.0, 1.0) == Phase::NonSparse);
  CHECK_THROWS_AS(classify_phase(std::nan(""), 1.0), NumericError);
  CHECK_THROWS_AS(classify_phase(1.0, std::nan("")), NumericError);

  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const double loss = rng.uniform(-5.0, 5.0);
    const double mean = i % 5 == 0 ? loss : rng.uniform(-5.0, 5.0);  // force ties regularly
    const Phase p = classify_phase(loss, mean);
    CHECK((p == Phase::Sparse) == (loss < mean));
  }
}

TEST_CASE("tracker means match the spec examples") {
  auto cum = PhaseTracker<double>::cumulative();
  cum.observe(1.0);
  cum.observe(2.0);
  cum.observe(3.0);
  CHECK(cum.mean_loss() == doctest::Approx(2.0).epsilon(1e-15));

  auto win = PhaseTracker<double>::window(2);
  win.observe(1.0);
  win.observe(2.0);
  win.observe(3.0);
  CHECK(win.mean_loss() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(win.retained() == 2);

  auto ema = PhaseTracker<double>::ema(0.1);
  CHECK(update_mean_loss(ema, 1.0) == 1.0);
  CHECK(update_mean_loss(ema, 2.0) == doctest::Approx(0.9 * 1.0 + 0.1 * 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(cum.observe(std::nan("")), NumericError);
  auto empty = PhaseTracker<double>::cumulative();
  CHECK_THROWS_AS(empty.mean_loss(), DataError);
}

TEST_CASE("tracker means equal the brute-force oracle over long random sequences") {
  Rng rng(77);
  auto cum = PhaseTracker<double>::cumulative();
  auto win = PhaseTracker<double>::window(37);
  auto ema = PhaseTracker<double>::ema(0.05);
  std::vector<double> losses;
  for (int i = 0; i < 10000; ++i) {
    const double loss = rng.uniform(0.0, 4.0);
    losses.push_back(loss);
    cum.observe(loss);
    win.observe(loss);
    ema.observe(loss);
    CHECK(std::abs(cum.mean_loss() - ref::cumulative_mean(losses)) <= 1e-12);
    CHECK(std::abs(win.mean_loss() - ref::window_mean(losses, 37)) <= 1e-12);
    CHECK(std::abs(ema.mean_loss() - ref::ema_value(losses, 0.05)) <= 1e-12);
    CHECK(win.retained() <= 37);
  }
}

TEST_CASE("lcam with equal betas collapses to fixed-momentum sgd") {
  for (const char* id : {"quadratic", "saddle", "coupled_spring", "rosenbrock"}) {
    const Landscape land = make_landscape(id);
    for (std::uint64_t seed : {1ULL, 99ULL}) {
      Rng rng(seed);
      Vecd start(land.dimension);
      for (Index i = 0; i < land.dimension; ++i) start[i] = rng.uniform(-1.0, 1.0);

      Vecd theta_sgd = start;
      Vecd theta_lcam = start;
      auto s1 = MomentumState<double>::zero(land.dimension);
      auto s2 = MomentumState<double>::zero(land.dimension);
      auto tracker = PhaseTracker<double>::window(17);
      const LcamConfig<double> cfg{0.9, 0.9, 0.0};

      const double lr = std::string(id) == "rosenbrock" ? 0.001 : 0.01;
      const int steps = std::string(id) == "quadratic" ? 10000 : 1000;
      bool identical = true;
      for (int step = 0; step < steps; ++step) {
        const double loss = land.eval(theta_lcam);
        const Vecd g_sgd = land.grad(theta_sgd);
        const Vecd g_lcam = land.grad(theta_lcam);
        sgd_momentum_step(theta_sgd, g_sgd, s1, lr, 0.9, 0.0);
        lcam_step(theta_lcam, g_lcam, s2, tracker, lr, cfg, loss);
        identical = identical && (theta_sgd.array() == theta_lcam.array()).all() &&
                    (s1.velocity.array() == s2.velocity.array()).all();
      }
      CHECK(identical);
    }
  }
}

TEST_CASE("lcam constant losses settle into the nonsparse beta from step 2") {
  const LcamConfig<double> cfg{0.9, 0.95, 0.0};
  Vecd theta = to_vec({1.0, -1.0});
  Vecd g = to_vec({0.1, 0.2});
  auto state = MomentumState<double>::zero(2);
  auto tracker = PhaseTracker<double>::cumulative();
  std::vector<double> betas;
  for (int step = 0; step < 50; ++step) {
    betas.push_back(lcam_step(theta, g, state, tracker, 0.01, cfg, 3.5).beta_applied);
  }
  CHECK(betas[0] == 0.9);  // first-ever step uses beta_sparse
  for (std::size_t i = 1; i < betas.size(); ++i) CHECK(betas[i] == 0.95);
}

TEST_CASE("lcam strictly decreasing losses stay sparse after the first decision") {
  const LcamConfig<double> cfg{0.9, 0.95, 0.0};
  Vecd theta = to_vec({1.0});
  Vecd g = to_vec({0.1});
  auto state = MomentumState<double>::zero(1);
  auto tracker = PhaseTracker<double>::cumulative();
  std::vector<double> losses;
  std::vector<Phase> decisions;
  for (int step = 0; step < 200; ++step) {
    const double loss = 10.0 - 0.05 * step;
    losses.push_back(loss);
    decisions.push_back(lcam_step(theta, g, state, tracker, 0.01, cfg, loss).phase_next);
    // brute-force check of each decision against the retained mean
    const Phase expect =
        loss < ref::cumulative_mean(losses) ? Phase::Sparse : Phase::NonSparse;
    CHECK(decisions.back() == expect);
  }
  CHECK(decisions[0] == Phase::NonSparse);  // first loss ties with its own mean
  for (std::size_t i = 1; i < decisions.size(); ++i) CHECK(decisions[i] == Phase::Sparse);
}

TEST_CASE("lcam applied beta lags the phase decisions by exactly one step") {
  const LcamConfig<double> cfg{0.9, 0.95, 0.0};
  Vecd theta = to_vec({0.5, 0.5, 0.5});
  Vecd g = to_vec({0.01, 0.02, 0.03});
  auto state = MomentumState<double>::zero(3);
  auto tracker = PhaseTracker<double>::window(11);
  Rng rng(123);

  std::vector<Phase> decisions;
  std::vector<double> betas;
  for (int step = 0; step < 500; ++step) {
    const auto r = lcam_step(theta, g, state, tracker, 0.001, cfg, rng.uniform(0.0, 2.0));
    decisions.push_back(r.phase_next);
    betas.push_back(r.beta_applied);
  }
  CHECK(betas[0] == cfg.beta_sparse);
  for (std::size_t t = 1; t < betas.size(); ++t) {
    CHECK(betas[t] == cfg.beta_for(decisions[t - 1]));
  }
}

TEST_CASE("adagrad single step matches the hand computation") {
  Vecd theta = to_vec({1.0});
  Vecd g = to_vec({2.0});
  auto state = AdaGradState<double>::zero(1);
  adagrad_step(theta, g, state, 0.1, 1e-8);
  CHECK(state.grad_sq_sum[0] == 4.0);
  CHECK(theta[0] == doctest::Approx(1.0 - 0.1 * 2.0 / std::sqrt(4.0 + 1e-8)).epsilon(1e-15));
  CHECK(theta[0] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(state.step_count == 1);
}

TEST_CASE("adagrad zero gradient is a fixed point") {
  Vecd theta = to_vec({1.0, -2.0});
  Vecd g = to_vec({0.0, 0.0});
  auto state = AdaGradState<double>::zero(2);
  state.grad_sq_sum = to_vec({0.0, 3.0});
  adagrad_step(theta, g, state, 0.1, 1e-8);
  CHECK(theta[0] == 1.0);
  CHECK(theta[1] == -2.0);
  CHECK(state.grad_sq_sum[0] == 0.0);
  CHECK(state.grad_sq_sum[1] == 3.0);
}

TEST_CASE("adagrad random steps match the scalar reference") {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.uniform_int(6));
    std::vector<double> t(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n)),
        gsq(static_cast<std::size_t>(n));
    for (auto& x : t) x = rng.uniform(-3.0, 3.0);
    for (auto& x : g) x = rng.uniform(-5.0, 5.0);
    for (auto& x : gsq) x = rng.uniform(0.0, 10.0);

    Vecd theta = to_vec(t);
    auto state = AdaGradState<double>::zero(n);
    state.grad_sq_sum = to_vec(gsq);
    const double lr = rng.uniform(1e-4, 0.5);
    adagrad_step(theta, to_vec(g), state, lr, 1e-8);
    ref::adagrad_step(t, g, gsq, lr, 1e-8);
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(theta[i] - t[static_cast<std::size_t>(i)]) <= 1e-12);
      CHECK(std::abs(state.grad_sq_sum[i] - gsq[static_cast<std::size_t>(i)]) <= 1e-12);
    }
  }
}

TEST_CASE("adagrad accumulator is elementwise nondecreasing") {
  Rng rng(55);
  Vecd theta = Vecd::Zero(4);
  auto state = AdaGradState<double>::zero(4);
  Vecd prev = state.grad_sq_sum;
  for (int step = 0; step < 300; ++step) {
    Vecd g(4);
    for (Index i = 0; i < 4; ++i) g[i] = rng.uniform(-2.0, 2.0);
    adagrad_step(theta, g, state, 0.01, 1e-8);
    CHECK((state.grad_sq_sum.array() >= prev.array()).all());
    prev = state.grad_sq_sum;
  }
}

TEST_CASE("adam first step moves by about the learning rate") {
  Vecd theta = to_vec({0.0});
  Vecd g = to_vec({10.0});
  auto state = AdamState<double>::zero(1);
  adam_step(theta, g, state, 0.001, 0.9, 0.999, 1e-8);
  CHECK(state.step_count == 1);
  CHECK(theta[0] < 0.0);
  CHECK(theta[0] == doctest::Approx(-0.001).epsilon(1e-4));
}

TEST_CASE("adam zero gradient with zero state leaves parameters unchanged") {
  Vecd theta = to_vec({0.7, -0.7});
  Vecd g = to_vec({0.0, 0.0});
  auto state = AdamState<double>::zero(2);
  adam_step(theta, g, state, 0.001, 0.9, 0.999, 1e-8);
  CHECK(theta[0] == 0.7);
  CHECK(theta[1] == -0.7);
}

TEST_CASE("adam random steps match the scalar reference") {
  Rng rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.uniform_int(6));
    std::vector<double> t(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n)),
        m(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (auto& x : t) x = rng.uniform(-3.0, 3.0);
    for (auto& x : g) x = rng.uniform(-5.0, 5.0);
    for (auto& x : m) x = rng.uniform(-1.0, 1.0);
    for (auto& x : v) x = rng.uniform(0.0, 2.0);
    const auto tstep = static_cast<std::int64_t>(1 + rng.uniform_int(50));

    Vecd theta = to_vec(t);
    auto state = AdamState<double>::zero(n);
    state.first_moment = to_vec(m);
    state.second_moment = to_vec(v);
    state.step_count = tstep - 1;
    const double lr = rng.uniform(1e-4, 0.1);
    adam_step(theta, to_vec(g), state, lr, 0.9, 0.999, 1e-8);
    ref::adam_step(t, g, m, v, tstep, lr, 0.9, 0.999, 1e-8);
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(theta[i] - t[static_cast<std::size_t>(i)]) <= 1e-12);
      CHECK(std::abs(state.first_moment[i] - m[static_cast<std::size_t>(i)]) <= 1e-12);
      CHECK(std::abs(state.second_moment[i] - v[static_cast<std::size_t>(i)]) <= 1e-12);
    }
    CHECK(state.step_count == tstep);
    CHECK((state.second_moment.array() >= 0.0).all());
  }
}

TEST_CASE("steps keep parameters finite on a bounded landscape with lr up to 1") {
  Rng rng(616);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.uniform_int(6));
    Vecd scales(n);
    for (Index i = 0; i < n; ++i) scales[i] = rng.uniform(0.05, 1.0);
    const Landscape land = make_quadratic(scales);

    Vecd theta(n);
    for (Index i = 0; i < n; ++i) theta[i] = rng.uniform(-2.0, 2.0);
    auto state = MomentumState<double>::zero(n);
    const double lr = rng.uniform(0.01, 1.0);
    const double beta = rng.uniform(0.05, 0.95);
    for (int step = 0; step < 2000; ++step) {
      sgd_momentum_step(theta, land.grad(theta), state, lr, beta, 0.0);
    }
    CHECK(theta.allFinite());
  }
}
