#pragma once

#include <vector>

#include "hometime/numerics.hpp"

namespace hometime {

/// Infection rate beta and recovery rate gamma, both per day.
struct DiseaseParams {
  double beta;
  double gamma;

  DiseaseParams(double beta_, double gamma_);

  double r0_basic() const { return beta / gamma; }

  /// Builds params from a basic reproduction number: beta = r0 * gamma.
  static DiseaseParams from_r0(double r0_basic, double gamma);
};

/// Population size, initial compartment fractions and the attendance rate a
/// (the fraction of infected individuals that keep attending).
/// Fractions must sum to 1 within 1e-12 and a must lie in [0, 1].
struct ScenarioConfig {
  double population;
  double s0;
  double i0;
  double r0_frac;
  double attendance;

  ScenarioConfig(double population_, double s0_, double i0_, double r0_frac_, double attendance_);
};

/// Compartment counts at time t plus the accumulated home-time integral.
struct PopulationState {
  double t;
  double s;
  double i;
  double r;
  double th_cum;  // child-days spent at home so far
};

struct SirDerivative {
  double ds;
  double di;
  double dr;
};

/// Right-hand side of the attendance-scaled SIR system:
///   ds = -a*(beta/N)*I*S,  di = a*(beta/N)*I*S - gamma*I,  dr = gamma*I.
/// The three components sum to zero, so S+I+R is conserved.
SirDerivative sir_rhs(const PopulationState& state, const DiseaseParams& params,
                      const ScenarioConfig& config);

struct Trajectory {
  DiseaseParams params;
  ScenarioConfig config;
  std::vector<PopulationState> samples;
};

/// Default integration step in days.
inline constexpr double kDefaultTimeStep = 0.01;

/// Terminal infected fraction below which a run counts as converged.
inline constexpr double kConvergedInfectedFraction = 1e-6;

/// Hard horizon cap for open-ended runs: 10 * (1/gamma) * ln(N / 1e-6) days.
double convergence_horizon(const DiseaseParams& params, const ScenarioConfig& config);

/// Integrates the system over [0, t_end] with RK4. Home time is carried as a
/// fourth state variable dTh/dt = (1-a)*I so the integral keeps full
/// integrator accuracy. The step is validated by halving per integrate_ode;
/// samples are spaced by the accepted step.
Trajectory simulate(const DiseaseParams& params, const ScenarioConfig& config, double t_end,
                    const SolverSettings& settings = {}, double dt = kDefaultTimeStep);

/// Like simulate, but picks the horizon automatically: integration runs
/// until I(t) < 1e-6 * N or the convergence_horizon cap, whichever first.
Trajectory simulate_to_convergence(const DiseaseParams& params, const ScenarioConfig& config,
                                   const SolverSettings& settings = {},
                                   double dt = kDefaultTimeStep);

/// Fraction of the population ever infected, read off as terminal R / N.
/// Throws std::runtime_error if the trajectory has not converged
/// (terminal I >= 1e-6 * N), which signals t_end was too small.
double attack_rate(const Trajectory& traj);

/// Keeps the first sample, then one sample per interval, and the last one.
/// interval <= 0 returns the trajectory unchanged.
Trajectory thin_trajectory(const Trajectory& traj, double interval);

}  // namespace hometime
