#include "hometime/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hometime {

DiseaseParams::DiseaseParams(double beta_, double gamma_) : beta(beta_), gamma(gamma_) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::invalid_argument("DiseaseParams: beta must be a positive finite rate");
  }
  if (!(std::isfinite(gamma) && gamma > 0.0)) {
    throw std::invalid_argument("DiseaseParams: gamma must be a positive finite rate");
  }
  if (!std::isfinite(beta / gamma)) {
    throw std::invalid_argument("DiseaseParams: beta/gamma overflows");
  }
}

DiseaseParams DiseaseParams::from_r0(double r0_basic, double gamma) {
  if (!(std::isfinite(r0_basic) && r0_basic > 0.0)) {
    throw std::invalid_argument("DiseaseParams: r0_basic must be positive and finite");
  }
  return DiseaseParams(r0_basic * gamma, gamma);
}

ScenarioConfig::ScenarioConfig(double population_, double s0_, double i0_, double r0_frac_,
                               double attendance_)
    : population(population_), s0(s0_), i0(i0_), r0_frac(r0_frac_), attendance(attendance_) {
  if (!(std::isfinite(population) && population > 0.0)) {
    throw std::invalid_argument("ScenarioConfig: population must be positive");
  }
  if (s0 < 0.0 || i0 < 0.0 || r0_frac < 0.0) {
    throw std::invalid_argument("ScenarioConfig: initial fractions must be non-negative");
  }
  if (std::abs(s0 + i0 + r0_frac - 1.0) > 1e-12) {
    throw std::invalid_argument("ScenarioConfig: s0 + i0 + r0_frac must equal 1 (tolerance 1e-12)");
  }
  if (!(attendance >= 0.0 && attendance <= 1.0)) {
    throw std::invalid_argument("ScenarioConfig: attendance must lie in [0, 1]");
  }
}

SirDerivative sir_rhs(const PopulationState& state, const DiseaseParams& params,
                      const ScenarioConfig& config) {
  const double infections = config.attendance * params.beta / config.population * state.i * state.s;
  const double recoveries = params.gamma * state.i;
  return {-infections, infections - recoveries, recoveries};
}

namespace {

std::vector<double> initial_state(const ScenarioConfig& config) {
  return {config.population * config.s0, config.population * config.i0,
          config.population * config.r0_frac, 0.0};
}

// State layout: [S, I, R, Th]; Th accumulates (1-a)*I.
auto make_rhs(const DiseaseParams& params, const ScenarioConfig& config) {
  const double home_fraction = 1.0 - config.attendance;
  return [params, config, home_fraction](const std::vector<double>& y,
                                          std::vector<double>& dydt) {
    const PopulationState state{0.0, y[0], y[1], y[2], y[3]};
    const SirDerivative d = sir_rhs(state, params, config);
    dydt[0] = d.ds;
    dydt[1] = d.di;
    dydt[2] = d.dr;
    dydt[3] = home_fraction * y[1];
  };
}

Trajectory to_trajectory(const DiseaseParams& params, const ScenarioConfig& config,
                         std::vector<OdeSample> samples) {
  Trajectory traj{params, config, {}};
  traj.samples.reserve(samples.size());
  for (const OdeSample& s : samples) {
    traj.samples.push_back({s.t, s.y[0], s.y[1], s.y[2], s.y[3]});
  }
  return traj;
}

}  // namespace

double convergence_horizon(const DiseaseParams& params, const ScenarioConfig& config) {
  return 10.0 / params.gamma * std::log(config.population / kConvergedInfectedFraction);
}

Trajectory simulate(const DiseaseParams& params, const ScenarioConfig& config, double t_end,
                    const SolverSettings& settings, double dt) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("simulate: t_end must be > 0");
  }
  auto rhs = make_rhs(params, config);
  return to_trajectory(params, config, integrate_ode(rhs, initial_state(config), t_end, settings, dt));
}

Trajectory simulate_to_convergence(const DiseaseParams& params, const ScenarioConfig& config,
                                   const SolverSettings& settings, double dt) {
  const double cap = convergence_horizon(params, config);
  const double threshold = kConvergedInfectedFraction * config.population;

  // Cheap pass to locate the stopping time, then a step-validated rerun.
  auto rhs = make_rhs(params, config);
  const auto probe = integrate_rk4(rhs, initial_state(config), cap, dt,
                                   [threshold](double, const std::vector<double>& y) {
                                     return y[1] < threshold;
                                   });
  return simulate(params, config, probe.back().t, settings, dt);
}

double attack_rate(const Trajectory& traj) {
  if (traj.samples.empty()) {
    throw std::invalid_argument("attack_rate: empty trajectory");
  }
  const PopulationState& last = traj.samples.back();
  const double threshold = kConvergedInfectedFraction * traj.config.population;
  if (!(last.i < threshold)) {
    throw std::runtime_error("attack_rate: trajectory not converged (terminal I=" +
                             std::to_string(last.i) + " >= " + std::to_string(threshold) +
                             "); t_end too small");
  }
  return last.r / traj.config.population;
}

Trajectory thin_trajectory(const Trajectory& traj, double interval) {
  if (interval <= 0.0 || traj.samples.size() < 3) return traj;
  Trajectory out{traj.params, traj.config, {}};
  double next_t = 0.0;
  for (const PopulationState& s : traj.samples) {
    if (s.t >= next_t) {
      out.samples.push_back(s);
      next_t = s.t + interval;
    }
  }
  if (out.samples.back().t != traj.samples.back().t) {
    out.samples.push_back(traj.samples.back());
  }
  return out;
}

}  // namespace hometime
