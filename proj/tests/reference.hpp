#pragma once

// Plain-scalar reference implementations kept deliberately independent of
// the library code (std::vector loops only, no Eigen, no lcam headers).
// Tests compare the library against these.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ref {

inline void sgd_step(std::vector<double>& theta, const std::vector<double>& g,
                     std::vector<double>& v, double lr, double beta, double wd) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double gp = g[i] + wd * theta[i];
    v[i] = beta * v[i] + gp;
    theta[i] -= lr * v[i];
  }
}

inline void adagrad_step(std::vector<double>& theta, const std::vector<double>& g,
                         std::vector<double>& gsq, double lr, double eps) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    gsq[i] += g[i] * g[i];
    theta[i] -= lr * g[i] / std::sqrt(gsq[i] + eps);
  }
}

inline void adam_step(std::vector<double>& theta, const std::vector<double>& g,
                      std::vector<double>& m, std::vector<double>& v, std::int64_t t,
                      double lr, double b1, double b2, double eps) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double mhat = m[i] / (1.0 - std::pow(b1, static_cast<double>(t)));
    const double vhat = v[i] / (1.0 - std::pow(b2, static_cast<double>(t)));
    theta[i] -= lr * mhat / std::sqrt(vhat + eps);
  }
}

inline double rosenbrock_eval(const std::vector<double>& th) {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < th.size(); ++i) {
    const double t = th[i + 1] - th[i] * th[i];
    const double u = 1.0 - th[i];
    f += 100.0 * t * t + u * u;
  }
  return f;
}

inline std::vector<double> rosenbrock_grad(const std::vector<double>& th) {
  std::vector<double> g(th.size(), 0.0);
  for (std::size_t i = 0; i + 1 < th.size(); ++i) {
    const double t = th[i + 1] - th[i] * th[i];
    g[i] += -400.0 * th[i] * t - 2.0 * (1.0 - th[i]);
    g[i + 1] += 200.0 * t;
  }
  return g;
}

// Mean of the losses a tracker retains, recomputed from scratch.
inline double cumulative_mean(const std::vector<double>& losses) {
  double s = 0.0;
  for (double x : losses) s += x;
  return s / static_cast<double>(losses.size());
}

inline double window_mean(const std::vector<double>& losses, std::size_t w) {
  const std::size_t n = losses.size() < w ? losses.size() : w;
  double s = 0.0;
  for (std::size_t i = losses.size() - n; i < losses.size(); ++i) s += losses[i];
  return s / static_cast<double>(n);
}

inline double ema_value(const std::vector<double>& losses, double alpha) {
  double m = losses.front();
  for (std::size_t i = 1; i < losses.size(); ++i) {
    m = (1.0 - alpha) * m + alpha * losses[i];
  }
  return m;
}

}  // namespace ref
