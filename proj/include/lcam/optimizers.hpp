#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lcam/error.hpp"
#include "lcam/types.hpp"

namespace lcam {

// Loss phase relative to the running mean loss. Sparse means the current
// loss sits below the mean (the slow-feature side); NonSparse means at or
// above it.
enum class Phase { Sparse, NonSparse };

inline const char* to_string(Phase p) {
  return p == Phase::Sparse ? "Sparse" : "NonSparse";
}

namespace detail {

template <class Scalar>
void require_finite(const Vec<Scalar>& v, const char* what) {
  if (v.allFinite()) return;
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NumericError(std::string(what) + " has non-finite entry at index " +
                         std::to_string(i));
    }
  }
}

template <class Scalar>
void require_same_length(const Vec<Scalar>& a, Index n, const char* what) {
  if (a.size() != n) {
    throw DimensionError(std::string(what) + " length " +
                         std::to_string(a.size()) + " does not match parameter length " +
                         std::to_string(n));
  }
}

template <class Scalar>
void require_unit_interval(Scalar x, const char* name) {
  if (!(x > Scalar(0) && x < Scalar(1))) {
    throw ConfigError(std::string(name) + " must lie strictly in (0,1)");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Optimizer state
// ---------------------------------------------------------------------------

template <class Scalar>
struct MomentumState {
  Vec<Scalar> velocity;
  std::int64_t step_count = 0;

  static MomentumState zero(Index n) {
    return {Vec<Scalar>::Zero(n), 0};
  }
};

template <class Scalar>
struct AdaGradState {
  Vec<Scalar> grad_sq_sum;
  std::int64_t step_count = 0;

  static AdaGradState zero(Index n) {
    return {Vec<Scalar>::Zero(n), 0};
  }
};

template <class Scalar>
struct AdamState {
  Vec<Scalar> first_moment;
  Vec<Scalar> second_moment;
  std::int64_t step_count = 0;

  static AdamState zero(Index n) {
    return {Vec<Scalar>::Zero(n), Vec<Scalar>::Zero(n), 0};
  }
};

// ---------------------------------------------------------------------------
// Baseline update rules
// ---------------------------------------------------------------------------

// Heavy-ball SGD: g' = g + weight_decay * theta, v <- beta*v + g',
// theta <- theta - lr*v. The velocity accumulates raw gradients and the
// learning rate scales the parameter update, so swapping beta changes only
// the effective step length.
template <class Scalar>
void sgd_momentum_step(Vec<Scalar>& params, const Vec<Scalar>& grads,
                       MomentumState<Scalar>& state, Scalar lr, Scalar beta,
                       Scalar weight_decay) {
  const Index n = params.size();
  detail::require_same_length(grads, n, "gradient");
  detail::require_same_length(state.velocity, n, "velocity");
  detail::require_finite(params, "params");
  detail::require_finite(grads, "grads");
  if (!(lr > Scalar(0))) throw ConfigError("lr must be positive");
  detail::require_unit_interval(beta, "beta");
  if (weight_decay < Scalar(0)) throw ConfigError("weight_decay must be nonnegative");

  if (weight_decay == Scalar(0)) {
    state.velocity = beta * state.velocity + grads;
  } else {
    state.velocity = beta * state.velocity + (grads + weight_decay * params);
  }
  params -= lr * state.velocity;
  ++state.step_count;
}

// AdaGrad: G <- G + g.^2, theta <- theta - lr * g ./ sqrt(G + eps).
// eps sits inside the square root.
template <class Scalar>
void adagrad_step(Vec<Scalar>& params, const Vec<Scalar>& grads,
                  AdaGradState<Scalar>& state, Scalar lr, Scalar eps) {
  const Index n = params.size();
  detail::require_same_length(grads, n, "gradient");
  detail::require_same_length(state.grad_sq_sum, n, "grad_sq_sum");
  detail::require_finite(params, "params");
  detail::require_finite(grads, "grads");
  if (!(lr > Scalar(0))) throw ConfigError("lr must be positive");
  if (!(eps > Scalar(0))) throw ConfigError("eps must be positive");

  state.grad_sq_sum.array() += grads.array().square();
  params.array() -= lr * grads.array() / (state.grad_sq_sum.array() + eps).sqrt();
  ++state.step_count;
}

// Adam with bias correction; eps sits inside the square root of the
// corrected second moment.
template <class Scalar>
void adam_step(Vec<Scalar>& params, const Vec<Scalar>& grads,
               AdamState<Scalar>& state, Scalar lr, Scalar beta1, Scalar beta2,
               Scalar eps) {
  const Index n = params.size();
  detail::require_same_length(grads, n, "gradient");
  detail::require_same_length(state.first_moment, n, "first_moment");
  detail::require_same_length(state.second_moment, n, "second_moment");
  detail::require_finite(params, "params");
  detail::require_finite(grads, "grads");
  if (!(lr > Scalar(0))) throw ConfigError("lr must be positive");
  detail::require_unit_interval(beta1, "beta1");
  detail::require_unit_interval(beta2, "beta2");
  if (!(eps > Scalar(0))) throw ConfigError("eps must be positive");

  const std::int64_t t = ++state.step_count;
  state.first_moment = beta1 * state.first_moment + (Scalar(1) - beta1) * grads;
  state.second_moment.array() =
      beta2 * state.second_moment.array() + (Scalar(1) - beta2) * grads.array().square();
  const Scalar mhat_scale = Scalar(1) / (Scalar(1) - std::pow(beta1, Scalar(t)));
  const Scalar vhat_scale = Scalar(1) / (Scalar(1) - std::pow(beta2, Scalar(t)));
  params.array() -= lr * (state.first_moment.array() * mhat_scale) /
                    ((state.second_moment.array() * vhat_scale) + eps).sqrt();
}

// ---------------------------------------------------------------------------
// Loss-phase machinery
// ---------------------------------------------------------------------------

// Sparse iff loss < mean_loss; ties fall to NonSparse.
template <class Scalar>
Phase classify_phase(Scalar loss, Scalar mean_loss) {
  if (!std::isfinite(loss) || !std::isfinite(mean_loss)) {
    throw NumericError("classify_phase requires finite loss and mean_loss");
  }
  return loss < mean_loss ? Phase::Sparse : Phase::NonSparse;
}

enum class TrackerMode { Cumulative, Window, Ema };

inline const char* to_string(TrackerMode m) {
  switch (m) {
    case TrackerMode::Cumulative: return "cumulative";
    case TrackerMode::Window: return "window";
    case TrackerMode::Ema: return "ema";
  }
  return "?";
}

// Running mean-loss statistic in one of three modes, plus the phase decided
// at the end of the previous iteration. Window means are recomputed from the
// ring buffer on every query so they stay exactly the arithmetic mean of the
// retained losses.
template <class Scalar>
class PhaseTracker {
 public:
  static PhaseTracker cumulative() { return PhaseTracker(TrackerMode::Cumulative, 0, Scalar(0)); }

  static PhaseTracker window(Index w) {
    if (w < 1) throw ConfigError("tracker window must be >= 1");
    return PhaseTracker(TrackerMode::Window, w, Scalar(0));
  }

  static PhaseTracker ema(Scalar alpha) {
    detail::require_unit_interval(alpha, "ema alpha");
    return PhaseTracker(TrackerMode::Ema, 0, alpha);
  }

  TrackerMode mode() const { return mode_; }
  Index window_size() const { return window_size_; }
  Scalar ema_alpha() const { return alpha_; }

  // Number of losses observed so far (all modes).
  std::int64_t count() const { return observed_; }

  void observe(Scalar loss) {
    if (!std::isfinite(loss)) throw NumericError("observed loss is not finite");
    switch (mode_) {
      case TrackerMode::Cumulative:
        sum_ += loss;
        break;
      case TrackerMode::Window:
        if (static_cast<Index>(ring_.size()) < window_size_) {
          ring_.push_back(loss);
        } else {
          ring_[head_] = loss;
          head_ = (head_ + 1) % window_size_;
        }
        break;
      case TrackerMode::Ema:
        ema_value_ = observed_ == 0 ? loss : (Scalar(1) - alpha_) * ema_value_ + alpha_ * loss;
        break;
    }
    ++observed_;
  }

  // Mean of the retained losses (or the EMA value). Requires observe() first.
  Scalar mean_loss() const {
    if (observed_ == 0) throw DataError("mean_loss queried before any loss was observed");
    switch (mode_) {
      case TrackerMode::Cumulative:
        return sum_ / static_cast<Scalar>(observed_);
      case TrackerMode::Window: {
        // Sum oldest-to-newest so the result is bitwise the sequential mean.
        Scalar s = Scalar(0);
        const Index n = static_cast<Index>(ring_.size());
        for (Index k = 0; k < n; ++k) s += ring_[(head_ + k) % n];
        return s / static_cast<Scalar>(n);
      }
      case TrackerMode::Ema:
        return ema_value_;
    }
    return Scalar(0);
  }

  Index retained() const {
    return mode_ == TrackerMode::Window ? static_cast<Index>(ring_.size())
                                        : static_cast<Index>(observed_);
  }

  Phase current_phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

 private:
  PhaseTracker(TrackerMode mode, Index w, Scalar alpha)
      : mode_(mode), window_size_(w), alpha_(alpha) {}

  TrackerMode mode_;
  Index window_size_;
  Scalar alpha_;
  Scalar sum_ = Scalar(0);
  Scalar ema_value_ = Scalar(0);
  std::vector<Scalar> ring_;
  Index head_ = 0;
  std::int64_t observed_ = 0;
  Phase phase_ = Phase::Sparse;  // first-ever step applies beta_sparse
};

// Observes a loss and returns the updated mean.
template <class Scalar>
Scalar update_mean_loss(PhaseTracker<Scalar>& tracker, Scalar loss) {
  tracker.observe(loss);
  return tracker.mean_loss();
}

// ---------------------------------------------------------------------------
// LCAM
// ---------------------------------------------------------------------------

template <class Scalar>
struct LcamConfig {
  Scalar beta_sparse;           // momentum applied while in the Sparse phase
  Scalar beta_nonsparse;        // momentum applied while in the NonSparse phase
  Scalar weight_decay = Scalar(5e-4);

  Scalar beta_for(Phase p) const {
    return p == Phase::Sparse ? beta_sparse : beta_nonsparse;
  }

  void validate() const {
    detail::require_unit_interval(beta_sparse, "beta_sparse");
    detail::require_unit_interval(beta_nonsparse, "beta_nonsparse");
    if (weight_decay < Scalar(0)) throw ConfigError("weight_decay must be nonnegative");
  }
};

template <class Scalar>
struct LcamStepResult {
  Scalar beta_applied;   // momentum coefficient used for this step
  Phase phase_applied;   // phase that selected beta_applied (previous decision)
  Phase phase_next;      // decision made from this iteration's loss
};

// One LCAM iteration. The momentum applied here comes from the phase decided
// at the end of the previous iteration (the decision lags the loss by one
// step); afterwards the tracker absorbs the current loss and stores the new
// phase. `loss` is the minibatch loss evaluated at the pre-step parameters.
template <class Scalar>
LcamStepResult<Scalar> lcam_step(Vec<Scalar>& params, const Vec<Scalar>& grads,
                                 MomentumState<Scalar>& state,
                                 PhaseTracker<Scalar>& tracker, Scalar lr,
                                 const LcamConfig<Scalar>& config, Scalar loss) {
  config.validate();
  const Phase applied = tracker.current_phase();
  const Scalar beta = config.beta_for(applied);
  sgd_momentum_step(params, grads, state, lr, beta, config.weight_decay);
  tracker.observe(loss);
  const Phase next = classify_phase(loss, tracker.mean_loss());
  tracker.set_phase(next);
  return {beta, applied, next};
}

}  // namespace lcam
