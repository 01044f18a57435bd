#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hometime {

/// Closed search interval [lo, hi]. Requires finite lo < hi.
struct BracketedInterval {
  double lo;
  double hi;

  BracketedInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw std::invalid_argument("BracketedInterval: requires finite lo < hi");
    }
  }
};

/// Absolute tolerance and iteration cap shared by the iterative kernels.
struct SolverSettings {
  double tolerance = 1e-8;
  int max_iterations = 200;

  void validate() const {
    if (!(tolerance > 0.0)) {
      throw std::invalid_argument("SolverSettings: tolerance must be > 0");
    }
    if (max_iterations < 1) {
      throw std::invalid_argument("SolverSettings: max_iterations must be >= 1");
    }
  }
};

/// Principal branch W0 of the Lambert W function, the inverse of w -> w*e^w
/// on [-1/e, inf).
///
/// Halley iteration seeded piecewise: a sqrt-series expansion near the branch
/// point, W(z) ~ 0.567*z for small arguments, and log(z) - log(log(z)) for
/// large ones. Arguments within 1e-12 below -1/e are clamped to the branch
/// point; anything lower throws std::domain_error.
///
/// Residual |w*e^w - z| stays below 1e-12 * max(1, |z|) across the domain,
/// and -1 < W0(z) < 0 for z in (-1/e, 0).
double lambert_w0(double z);

struct ScalarMaximum {
  double x;      // argmax estimate
  double value;  // f at the estimate
  int evaluations = 0;
};

/// Golden-section maximization of a unimodal function on a bracketed
/// interval. The returned x lies within settings.tolerance of the true
/// maximizer when f is unimodal. Throws std::runtime_error if the interval
/// has not shrunk below tolerance within settings.max_iterations.
ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              const BracketedInterval& interval,
                              const SolverSettings& settings = {});

/// One sample of an ODE solution.
struct OdeSample {
  double t;
  std::vector<double> y;
};

namespace detail {

// Classical RK4 stepper with preallocated stage storage.
class Rk4Stepper {
 public:
  explicit Rk4Stepper(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  template <class Rhs>
  void step(Rhs& rhs, std::vector<double>& y, double dt) {
    const std::size_t n = y.size();
    rhs(y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
    rhs(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
    rhs(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    rhs(tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += dt * ((k1_[i] + k4_[i]) + 2.0 * (k2_[i] + k3_[i])) / 6.0;
    }
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

inline void check_integration_args(double t_end, double dt, const std::vector<double>& y0) {
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (y0.empty()) throw std::invalid_argument("integrate: empty initial state");
  for (double v : y0) {
    if (!std::isfinite(v)) throw std::invalid_argument("integrate: initial state must be finite");
  }
}

inline long long step_count(double t_end, double dt) {
  return std::max(1LL, static_cast<long long>(std::ceil(t_end / dt - 1e-12)));
}

}  // namespace detail

/// Fixed-step classical RK4 over [0, t_end] for an autonomous system
/// rhs(y, dydt). dt is rounded down so the grid lands exactly on t_end.
/// Records every step; `stop(t, y)` is evaluated after each step and ends
/// the integration early when it returns true.
template <class Rhs, class StopPredicate>
std::vector<OdeSample> integrate_rk4(Rhs&& rhs, std::vector<double> y0, double t_end, double dt,
                                     StopPredicate&& stop) {
  detail::check_integration_args(t_end, dt, y0);
  const long long steps = detail::step_count(t_end, dt);
  const double h = t_end / static_cast<double>(steps);

  std::vector<OdeSample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back({0.0, y0});

  detail::Rk4Stepper stepper(y0.size());
  std::vector<double> y = std::move(y0);
  for (long long k = 1; k <= steps; ++k) {
    stepper.step(rhs, y, h);
    const double t = (k == steps) ? t_end : static_cast<double>(k) * h;
    out.push_back({t, y});
    if (stop(t, y)) break;
  }
  return out;
}

template <class Rhs>
std::vector<OdeSample> integrate_rk4(Rhs&& rhs, std::vector<double> y0, double t_end, double dt) {
  return integrate_rk4(std::forward<Rhs>(rhs), std::move(y0), t_end, dt,
                       [](double, const std::vector<double>&) { return false; });
}

/// Endpoint-only RK4 run; used for step-size acceptance checks.
template <class Rhs>
std::vector<double> rk4_endpoint(Rhs&& rhs, std::vector<double> y, double t_end, double dt) {
  detail::check_integration_args(t_end, dt, y);
  const long long steps = detail::step_count(t_end, dt);
  const double h = t_end / static_cast<double>(steps);
  detail::Rk4Stepper stepper(y.size());
  for (long long k = 0; k < steps; ++k) stepper.step(rhs, y, h);
  return y;
}

/// RK4 integration with automatic step validation: the step dt is accepted
/// once halving it moves the endpoint state by less than settings.tolerance.
/// Starts from initial_dt and halves until accepted. Throws
/// std::runtime_error on step-size underflow (dt below 1e-6 * t_end without
/// convergence, which signals a stiff or invalid system) or when
/// settings.max_iterations refinements were not enough.
template <class Rhs>
std::vector<OdeSample> integrate_ode(Rhs&& rhs, const std::vector<double>& y0, double t_end,
                                     const SolverSettings& settings = {},
                                     double initial_dt = 0.01) {
  settings.validate();
  detail::check_integration_args(t_end, initial_dt, y0);

  double dt = std::min(initial_dt, t_end);
  std::vector<OdeSample> samples = integrate_rk4(rhs, y0, t_end, dt);
  for (int refinement = 0; refinement < settings.max_iterations; ++refinement) {
    const std::vector<double> fine_end = rk4_endpoint(rhs, y0, t_end, 0.5 * dt);
    double diff = 0.0;
    const std::vector<double>& coarse_end = samples.back().y;
    for (std::size_t i = 0; i < fine_end.size(); ++i) {
      diff = std::max(diff, std::abs(fine_end[i] - coarse_end[i]));
    }
    if (diff < settings.tolerance) return samples;
    if (0.5 * dt <= 1e-6 * t_end) {
      throw std::runtime_error("integrate_ode: step size underflow at dt=" + std::to_string(dt) +
                               " (endpoint still moving by " + std::to_string(diff) + ")");
    }
    dt *= 0.5;
    samples = integrate_rk4(rhs, y0, t_end, dt);
  }
  throw std::runtime_error("integrate_ode: no step refinement accepted within max_iterations");
}

}  // namespace hometime
