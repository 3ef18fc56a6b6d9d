#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcam/error.hpp"
#include "lcam/types.hpp"

namespace lcam {

namespace detail {

template <class Scalar>
void require_finite_point(const Vec<Scalar>& theta) {
  if (!theta.allFinite()) throw NumericError("landscape evaluated at a non-finite point");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Axis-aligned quadratic bowl: f = 1/2 sum s_i theta_i^2
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar eval_quadratic(const Vec<Scalar>& theta, const Vec<Scalar>& diag_scales) {
  detail::require_finite_point(theta);
  if (theta.size() != diag_scales.size()) {
    throw DimensionError("diag_scales length does not match theta");
  }
  if ((diag_scales.array() <= Scalar(0)).any()) {
    throw ConfigError("quadratic scales must be positive");
  }
  return Scalar(0.5) * (diag_scales.array() * theta.array().square()).sum();
}

template <class Scalar>
Vec<Scalar> grad_quadratic(const Vec<Scalar>& theta, const Vec<Scalar>& diag_scales) {
  detail::require_finite_point(theta);
  if (theta.size() != diag_scales.size()) {
    throw DimensionError("diag_scales length does not match theta");
  }
  return diag_scales.cwiseProduct(theta);
}

// ---------------------------------------------------------------------------
// Saddle with quartic confinement: f = 1/2 th0^2 - 1/2 th1^2 + 1/4 th1^4,
// extra coordinates (if any) contribute 1/2 th_i^2 so trajectories stay
// bounded in every dimension. Stationary saddle at the origin, minima at
// th1 = +-1.
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar eval_saddle(const Vec<Scalar>& theta) {
  detail::require_finite_point(theta);
  if (theta.size() < 2) throw DimensionError("saddle needs dimension >= 2");
  Scalar f = Scalar(0.5) * theta[0] * theta[0] - Scalar(0.5) * theta[1] * theta[1] +
             Scalar(0.25) * theta[1] * theta[1] * theta[1] * theta[1];
  for (Index i = 2; i < theta.size(); ++i) f += Scalar(0.5) * theta[i] * theta[i];
  return f;
}

template <class Scalar>
Vec<Scalar> grad_saddle(const Vec<Scalar>& theta) {
  detail::require_finite_point(theta);
  if (theta.size() < 2) throw DimensionError("saddle needs dimension >= 2");
  Vec<Scalar> g = theta;
  g[1] = -theta[1] + theta[1] * theta[1] * theta[1];
  return g;
}

// ---------------------------------------------------------------------------
// Coupled spring: two parameter groups of equal size k share the layout
// theta = [n-group | s-group]. Each pair (theta_n[i], theta_s[i]) contributes
//   1/2 soft (tn - b_i)^2 + 1/2 stiff (ts - a_i)^2 + coupling (tn - b_i)(ts - a_i)
// which is positive semidefinite iff coupling^2 <= stiff * soft. The stiff
// curvature sits on the s-group, the soft one on the n-group, and coupling
// sets the traction between them.
// ---------------------------------------------------------------------------

template <class Scalar>
struct CoupledSpringParams {
  Scalar stiff_scale = Scalar(10);
  Scalar soft_scale = Scalar(1);
  Scalar coupling = Scalar(2);
  Index pairs = 5;                 // dimension is 2 * pairs
  Vec<Scalar> target_s;            // a, defaults to zeros
  Vec<Scalar> target_n;            // b, defaults to zeros

  void validate() const {
    if (pairs < 1) throw ConfigError("spring pairs must be >= 1");
    if (!(stiff_scale > Scalar(0)) || !(soft_scale > Scalar(0))) {
      throw ConfigError("spring scales must be positive");
    }
    if (coupling * coupling > stiff_scale * soft_scale) {
      throw ConfigError("spring coupling violates coupling^2 <= stiff_scale * soft_scale");
    }
    if (target_s.size() != 0 && target_s.size() != pairs) {
      throw DimensionError("target_s length does not match pairs");
    }
    if (target_n.size() != 0 && target_n.size() != pairs) {
      throw DimensionError("target_n length does not match pairs");
    }
  }
};

template <class Scalar>
Scalar eval_coupled_spring(const Vec<Scalar>& theta, const CoupledSpringParams<Scalar>& p) {
  detail::require_finite_point(theta);
  p.validate();
  const Index k = p.pairs;
  if (theta.size() != 2 * k) throw DimensionError("coupled spring needs dimension 2 * pairs");
  Scalar f = Scalar(0);
  for (Index i = 0; i < k; ++i) {
    const Scalar dn = theta[i] - (p.target_n.size() ? p.target_n[i] : Scalar(0));
    const Scalar ds = theta[k + i] - (p.target_s.size() ? p.target_s[i] : Scalar(0));
    f += Scalar(0.5) * p.soft_scale * dn * dn + Scalar(0.5) * p.stiff_scale * ds * ds +
         p.coupling * dn * ds;
  }
  return f;
}

template <class Scalar>
Vec<Scalar> grad_coupled_spring(const Vec<Scalar>& theta, const CoupledSpringParams<Scalar>& p) {
  detail::require_finite_point(theta);
  p.validate();
  const Index k = p.pairs;
  if (theta.size() != 2 * k) throw DimensionError("coupled spring needs dimension 2 * pairs");
  Vec<Scalar> g(2 * k);
  for (Index i = 0; i < k; ++i) {
    const Scalar dn = theta[i] - (p.target_n.size() ? p.target_n[i] : Scalar(0));
    const Scalar ds = theta[k + i] - (p.target_s.size() ? p.target_s[i] : Scalar(0));
    g[i] = p.soft_scale * dn + p.coupling * ds;
    g[k + i] = p.stiff_scale * ds + p.coupling * dn;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Chained Rosenbrock: f = sum_{i<n-1} 100 (th_{i+1} - th_i^2)^2 + (1 - th_i)^2
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar eval_rosenbrock(const Vec<Scalar>& theta) {
  detail::require_finite_point(theta);
  if (theta.size() < 2) throw DimensionError("rosenbrock needs dimension >= 2");
  Scalar f = Scalar(0);
  for (Index i = 0; i + 1 < theta.size(); ++i) {
    const Scalar t = theta[i + 1] - theta[i] * theta[i];
    const Scalar u = Scalar(1) - theta[i];
    f += Scalar(100) * t * t + u * u;
  }
  return f;
}

template <class Scalar>
Vec<Scalar> grad_rosenbrock(const Vec<Scalar>& theta) {
  detail::require_finite_point(theta);
  if (theta.size() < 2) throw DimensionError("rosenbrock needs dimension >= 2");
  Vec<Scalar> g = Vec<Scalar>::Zero(theta.size());
  for (Index i = 0; i + 1 < theta.size(); ++i) {
    const Scalar t = theta[i + 1] - theta[i] * theta[i];
    g[i] += Scalar(-400) * theta[i] * t - Scalar(2) * (Scalar(1) - theta[i]);
    g[i + 1] += Scalar(200) * t;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Named landscape wrapper and registry
// ---------------------------------------------------------------------------

struct Landscape {
  std::string name;
  Index dimension = 0;
  std::function<double(const Vecd&)> eval;
  std::function<Vecd(const Vecd&)> grad;
  std::optional<std::pair<Vecd, double>> known_minimum;
};

inline Landscape make_quadratic(Vecd scales) {
  Landscape l;
  l.name = "quadratic";
  l.dimension = scales.size();
  l.known_minimum = {{Vecd::Zero(scales.size()), 0.0}};
  l.eval = [scales](const Vecd& t) { return eval_quadratic<double>(t, scales); };
  l.grad = [scales](const Vecd& t) { return grad_quadratic<double>(t, scales); };
  return l;
}

inline Landscape make_saddle(Index dim = 2) {
  Landscape l;
  l.name = "saddle";
  l.dimension = dim;
  Vecd m = Vecd::Zero(dim);
  m[1] = 1.0;
  l.known_minimum = {{m, -0.25}};
  l.eval = [](const Vecd& t) { return eval_saddle<double>(t); };
  l.grad = [](const Vecd& t) { return grad_saddle<double>(t); };
  return l;
}

inline Landscape make_coupled_spring(CoupledSpringParams<double> p = {}) {
  p.validate();
  Landscape l;
  l.name = "coupled_spring";
  l.dimension = 2 * p.pairs;
  Vecd m(2 * p.pairs);
  for (Index i = 0; i < p.pairs; ++i) {
    m[i] = p.target_n.size() ? p.target_n[i] : 0.0;
    m[p.pairs + i] = p.target_s.size() ? p.target_s[i] : 0.0;
  }
  l.known_minimum = {{m, 0.0}};
  l.eval = [p](const Vecd& t) { return eval_coupled_spring<double>(t, p); };
  l.grad = [p](const Vecd& t) { return grad_coupled_spring<double>(t, p); };
  return l;
}

inline Landscape make_rosenbrock(Index dim = 2) {
  Landscape l;
  l.name = "rosenbrock";
  l.dimension = dim;
  l.known_minimum = {{Vecd::Ones(dim), 0.0}};
  l.eval = [](const Vecd& t) { return eval_rosenbrock<double>(t); };
  l.grad = [](const Vecd& t) { return grad_rosenbrock<double>(t); };
  return l;
}

inline std::vector<std::string> landscape_ids() {
  return {"quadratic", "saddle", "coupled_spring", "rosenbrock"};
}

// Default-parameter instance for a registry id. The quadratic defaults to the
// ill-conditioned 2-D bowl with scales (1, 100).
inline Landscape make_landscape(const std::string& id) {
  if (id == "quadratic") {
    Vecd s(2);
    s << 1.0, 100.0;
    return make_quadratic(s);
  }
  if (id == "saddle") return make_saddle();
  if (id == "coupled_spring") return make_coupled_spring();
  if (id == "rosenbrock") return make_rosenbrock();
  throw ConfigError("unknown landscape id '" + id + "'");
}

// Central finite differences, (f(x+h e_i) - f(x-h e_i)) / (2h) per coordinate.
inline Vecd finite_difference_gradient(const Landscape& landscape, const Vecd& theta,
                                       double h) {
  if (!(h >= 1e-8 && h <= 1e-2)) {
    throw ConfigError("finite difference step h must lie in [1e-8, 1e-2]");
  }
  Vecd g(theta.size());
  Vecd probe = theta;
  for (Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double fp = landscape.eval(probe);
    probe[i] = theta[i] - h;
    const double fm = landscape.eval(probe);
    probe[i] = theta[i];
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw NumericError("finite difference probe produced a non-finite loss at index " +
                         std::to_string(i));
    }
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace lcam
