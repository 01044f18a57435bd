#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hometime/analysis.hpp"
#include "hometime/io.hpp"
#include "hometime/model.hpp"

namespace {

using namespace hometime;

void write_with_sink(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::invalid_argument("--out: cannot open '" + path + "' for writing");
  }
  writer(file);
  if (!file) {
    throw std::runtime_error("--out: write failed for '" + path + "'");
  }
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> values(static_cast<std::size_t>(steps));
  if (steps == 1) {
    values[0] = lo;
    return values;
  }
  for (int k = 0; k < steps; ++k) {
    values[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (steps - 1);
  }
  values.back() = hi;
  return values;
}

double initial_recovered_fraction(double s0, double i0) {
  const double r0_frac = 1.0 - s0 - i0;
  if (r0_frac < -1e-12) {
    throw std::invalid_argument("--s0 + --i0 must not exceed 1");
  }
  return std::max(0.0, r0_frac);
}

struct SimulateOpts {
  double a = 0.0;
  double beta = 0.5;
  double gamma = 0.1;
  double n = 100.0;
  double s0 = 0.99;
  double i0 = 0.01;
  double t_end = 0.0;  // 0 = run until the outbreak has died out
  double dt = kDefaultTimeStep;
  double tol = 1e-8;
  double sample_every = 0.0;
  std::string out;
  std::string format = "csv";
};

int run_simulate(const SimulateOpts& opt) {
  const DiseaseParams params(opt.beta, opt.gamma);
  const ScenarioConfig config(opt.n, opt.s0, opt.i0, initial_recovered_fraction(opt.s0, opt.i0),
                              opt.a);
  const SolverSettings settings{opt.tol, 200};

  const Trajectory traj = opt.t_end > 0.0
                              ? simulate(params, config, opt.t_end, settings, opt.dt)
                              : simulate_to_convergence(params, config, settings, opt.dt);

  if (!opt.out.empty()) {
    const OutputFormat format = parse_output_format(opt.format);
    const Trajectory thinned = thin_trajectory(traj, opt.sample_every);
    write_with_sink(opt.out, [&](std::ostream& os) { write_trajectory(thinned, format, os); });
  }

  double attack = std::nan("");
  try {
    attack = attack_rate(traj);
  } catch (const std::runtime_error&) {
    // outbreak still active at t_end; leave the attack rate undefined
  }
  std::cout << "a=" << format_number(opt.a) << " Th_end=" << format_number(traj.samples.back().th_cum)
            << " attack_rate=" << format_number(attack) << '\n';
  return 0;
}

struct OptimizeOpts {
  double r0 = 0.0;  // set via --r0; otherwise beta/gamma are used
  double beta = 0.5;
  double gamma = 0.1;
  double n = 100.0;
  double s0 = 0.99;
  double i0 = 0.01;
  double tol = 1e-8;
  double ratio = 6.0;
  double open_days = 5.0 / 7.0;
  std::string out;
  std::string format = "csv";
  bool r0_given = false;
};

int run_optimize(const OptimizeOpts& opt) {
  const DiseaseParams params =
      opt.r0_given ? DiseaseParams::from_r0(opt.r0, opt.gamma) : DiseaseParams(opt.beta, opt.gamma);
  const double r0_frac = initial_recovered_fraction(opt.s0, opt.i0);
  const StaffingParams staffing{opt.ratio, opt.open_days};
  staffing.validate();
  const SolverSettings settings{opt.tol, 200};

  const OptimizationResult result = optimize_attendance(params, opt.n, opt.s0, r0_frac, settings);
  const double savings = staff_savings(result.th_star, staffing);

  const OutputFormat format = parse_output_format(opt.format);
  if (format == OutputFormat::json) {
    write_optimization(result, savings, OutputFormat::json, std::cout);
  } else {
    std::cout << "a_star=" << format_number(result.a_star)
              << " Th_star=" << format_number(result.th_star)
              << " savings=" << format_number(savings) << '\n';
  }
  if (!opt.out.empty()) {
    write_with_sink(opt.out, [&](std::ostream& os) { write_optimization(result, savings, format, os); });
  }
  return 0;
}

struct SweepOpts {
  double a_min = 0.01;
  double a_max = 1.0;
  int a_steps = 100;
  double r0_min = 1.0;
  double r0_max = 18.0;
  int r0_steps = 171;
  double gamma = 0.1;
  double n = 100.0;
  double s0 = 0.99;
  double i0 = 0.01;
  std::string out;
  std::string format = "csv";
};

int run_sweep(const SweepOpts& opt) {
  if (opt.a_steps > 1 && !(opt.a_min < opt.a_max)) {
    throw std::invalid_argument("--a-min must be < --a-max when --a-steps > 1");
  }
  if (opt.r0_steps > 1 && !(opt.r0_min < opt.r0_max)) {
    throw std::invalid_argument("--r0-min must be < --r0-max when --r0-steps > 1");
  }
  const double r0_frac = initial_recovered_fraction(opt.s0, opt.i0);

  const SweepGrid grid = sweep(linspace(opt.a_min, opt.a_max, opt.a_steps),
                               linspace(opt.r0_min, opt.r0_max, opt.r0_steps), opt.gamma, opt.n,
                               opt.s0, r0_frac);
  const OutputFormat format = parse_output_format(opt.format);
  write_with_sink(opt.out, [&](std::ostream& os) { write_sweep(grid, format, os); });
  return 0;
}

struct TableOpts {
  std::string catalog;
  double n = 100.0;
  double s0 = 0.99;
  double i0 = 0.01;
  double ratio = 6.0;
  double open_days = 5.0 / 7.0;
  std::string out;
  std::string format = "csv";
};

int run_table(const TableOpts& opt) {
  std::vector<DiseaseEntry> entries;
  if (opt.catalog.empty()) {
    entries = default_disease_catalog();
  } else {
    std::ifstream file(opt.catalog);
    if (!file) {
      throw std::invalid_argument("--catalog: cannot open '" + opt.catalog + "'");
    }
    entries = read_disease_catalog(file);
  }
  const double r0_frac = initial_recovered_fraction(opt.s0, opt.i0);
  const StaffingParams staffing{opt.ratio, opt.open_days};

  const std::vector<DiseaseTableRow> rows = disease_table(entries, opt.n, opt.s0, r0_frac, staffing);
  const OutputFormat format = parse_output_format(opt.format);
  write_with_sink(opt.out, [&](std::ostream& os) { write_disease_table(rows, format, os); });
  return 0;
}

void add_scenario_flags(CLI::App* cmd, double* n, double* s0, double* i0) {
  cmd->add_option("--n", *n, "Population size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--s0", *s0, "Initial susceptible fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--i0", *i0, "Initial infected fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, std::string* out, std::string* format) {
  cmd->add_option("--out", *out, "Output file path (stdout or none if omitted)");
  cmd->add_option("--format", *format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attendance-scaled SIR model: home-time trajectories, optimal attendance rates,\n"
               "parameter sweeps and per-disease staffing savings."};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Integrate the outbreak and report home time");
  sim_cmd->add_option("--a", sim.a, "Attendance rate of infected individuals")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--beta", sim.beta, "Infection rate per day")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--gamma", sim.gamma, "Recovery rate per day")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_scenario_flags(sim_cmd, &sim.n, &sim.s0, &sim.i0);
  sim_cmd->add_option("--t-end", sim.t_end, "Horizon in days (0 = run to convergence)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim_cmd->add_option("--dt", sim.dt, "Integration step in days")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--tol", sim.tol, "Endpoint tolerance for step validation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--sample-every", sim.sample_every,
                      "Thin written samples to this spacing in days (0 = keep all)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_output_flags(sim_cmd, &sim.out, &sim.format);

  OptimizeOpts best;
  CLI::App* opt_cmd = app.add_subcommand("optimize", "Find the attendance rate maximizing home time");
  CLI::Option* r0_opt = opt_cmd->add_option("--r0", best.r0, "Basic reproduction number")
                            ->check(CLI::PositiveNumber);
  CLI::Option* beta_opt = opt_cmd->add_option("--beta", best.beta, "Infection rate per day")
                              ->check(CLI::PositiveNumber)
                              ->capture_default_str();
  r0_opt->excludes(beta_opt);
  opt_cmd->add_option("--gamma", best.gamma, "Recovery rate per day")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_scenario_flags(opt_cmd, &best.n, &best.s0, &best.i0);
  opt_cmd->add_option("--tol", best.tol, "Attendance tolerance of the maximizer")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  opt_cmd->add_option("--ratio", best.ratio, "Children per teacher")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  opt_cmd->add_option("--open-days-fraction", best.open_days, "Fraction of days the center opens")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_output_flags(opt_cmd, &best.out, &best.format);

  SweepOpts swp;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate Th(inf) over an (a, R0) grid");
  sweep_cmd->add_option("--a-min", swp.a_min, "Smallest attendance rate")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--a-max", swp.a_max, "Largest attendance rate")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--a-steps", swp.a_steps, "Number of attendance grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--r0-min", swp.r0_min, "Smallest R0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--r0-max", swp.r0_max, "Largest R0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--r0-steps", swp.r0_steps, "Number of R0 grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--gamma", swp.gamma, "Recovery rate per day")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_scenario_flags(sweep_cmd, &swp.n, &swp.s0, &swp.i0);
  add_output_flags(sweep_cmd, &swp.out, &swp.format);

  TableOpts tab;
  CLI::App* table_cmd = app.add_subcommand("table", "Optimal attendance and savings per disease");
  table_cmd->add_option("--catalog", tab.catalog,
                        "Disease catalog CSV (built-in catalog if omitted)");
  add_scenario_flags(table_cmd, &tab.n, &tab.s0, &tab.i0);
  table_cmd->add_option("--ratio", tab.ratio, "Children per teacher")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table_cmd->add_option("--open-days-fraction", tab.open_days, "Fraction of days the center opens")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_output_flags(table_cmd, &tab.out, &tab.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  best.r0_given = r0_opt->count() > 0;

  try {
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim);
    if (app.got_subcommand(opt_cmd)) return run_optimize(best);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(swp);
    return run_table(tab);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
