#include <optional>
#include <sstream>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hometime/analysis.hpp"
#include "hometime/io.hpp"
#include "hometime/model.hpp"
#include "hometime/numerics.hpp"

namespace py = pybind11;
using namespace hometime;

namespace {

std::vector<double> column(const Trajectory& traj, double PopulationState::*field) {
  std::vector<double> values;
  values.reserve(traj.samples.size());
  for (const PopulationState& s : traj.samples) values.push_back(s.*field);
  return values;
}

ScenarioConfig make_config(double population, double s0, double i0, double r0_frac, double a) {
  return ScenarioConfig(population, s0, i0, r0_frac, a);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SIR dynamics with attendance-scaled transmission: trajectories, closed-form "
            "final sizes, home-time maximization and staffing savings.";

  py::class_<DiseaseParams>(m, "DiseaseParams")
      .def(py::init<double, double>(), py::arg("beta"), py::arg("gamma"))
      .def_static("from_r0", &DiseaseParams::from_r0, py::arg("r0_basic"), py::arg("gamma"))
      .def_readonly("beta", &DiseaseParams::beta)
      .def_readonly("gamma", &DiseaseParams::gamma)
      .def_property_readonly("r0_basic", &DiseaseParams::r0_basic)
      .def("__repr__", [](const DiseaseParams& p) {
        std::ostringstream os;
        os << "DiseaseParams(beta=" << p.beta << ", gamma=" << p.gamma << ")";
        return os.str();
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("t", [](const Trajectory& tr) { return column(tr, &PopulationState::t); })
      .def_property_readonly("s", [](const Trajectory& tr) { return column(tr, &PopulationState::s); })
      .def_property_readonly("i", [](const Trajectory& tr) { return column(tr, &PopulationState::i); })
      .def_property_readonly("r", [](const Trajectory& tr) { return column(tr, &PopulationState::r); })
      .def_property_readonly("th_cum",
                             [](const Trajectory& tr) { return column(tr, &PopulationState::th_cum); })
      .def_property_readonly("i_attending",
                             [](const Trajectory& tr) {
                               auto v = column(tr, &PopulationState::i);
                               for (double& x : v) x *= tr.config.attendance;
                               return v;
                             })
      .def_property_readonly("i_home",
                             [](const Trajectory& tr) {
                               auto v = column(tr, &PopulationState::i);
                               for (double& x : v) x *= 1.0 - tr.config.attendance;
                               return v;
                             })
      .def_property_readonly("attendance", [](const Trajectory& tr) { return tr.config.attendance; })
      .def("attack_rate", &attack_rate)
      .def("__len__", [](const Trajectory& tr) { return tr.samples.size(); })
      .def("__repr__", [](const Trajectory& tr) {
        std::ostringstream os;
        os << "Trajectory(a=" << tr.config.attendance << ", samples=" << tr.samples.size() << ")";
        return os.str();
      });

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("a_star", &OptimizationResult::a_star)
      .def_readonly("th_star", &OptimizationResult::th_star)
      .def_readonly("evaluations", &OptimizationResult::evaluations)
      .def_readonly("tolerance_used", &OptimizationResult::tolerance_used)
      .def("__repr__", [](const OptimizationResult& r) {
        std::ostringstream os;
        os << "OptimizationResult(a_star=" << r.a_star << ", th_star=" << r.th_star << ")";
        return os.str();
      });

  py::class_<RidgePoint>(m, "RidgePoint")
      .def_readonly("r0", &RidgePoint::r0)
      .def_readonly("a_star", &RidgePoint::a_star)
      .def_readonly("th_star", &RidgePoint::th_star)
      .def("__repr__", [](const RidgePoint& p) {
        std::ostringstream os;
        os << "RidgePoint(r0=" << p.r0 << ", a_star=" << p.a_star << ", th_star=" << p.th_star
           << ")";
        return os.str();
      });

  py::class_<SweepGrid>(m, "SweepGrid")
      .def_readonly("a_values", &SweepGrid::a_values)
      .def_readonly("r0_values", &SweepGrid::r0_values)
      .def_readonly("th_matrix", &SweepGrid::th_matrix)
      .def_readonly("ridge", &SweepGrid::ridge);

  py::class_<DiseaseEntry>(m, "DiseaseEntry")
      .def(py::init([](std::string name, double r0_low, double r0_high,
                       std::optional<double> r0_used, double gamma) {
             DiseaseEntry e{std::move(name), r0_low, r0_high,
                            r0_used.value_or(0.5 * (r0_low + r0_high)), gamma};
             e.validate();
             return e;
           }),
           py::arg("name"), py::arg("r0_low"), py::arg("r0_high"),
           py::arg("r0_used") = std::nullopt, py::arg("gamma") = 0.1)
      .def_readonly("name", &DiseaseEntry::name)
      .def_readonly("r0_low", &DiseaseEntry::r0_low)
      .def_readonly("r0_high", &DiseaseEntry::r0_high)
      .def_readonly("r0_used", &DiseaseEntry::r0_used)
      .def_readonly("gamma", &DiseaseEntry::gamma);

  py::class_<DiseaseTableRow>(m, "DiseaseTableRow")
      .def_readonly("name", &DiseaseTableRow::name)
      .def_readonly("r0_used", &DiseaseTableRow::r0_used)
      .def_readonly("a_star", &DiseaseTableRow::a_star)
      .def_readonly("th_star", &DiseaseTableRow::th_star)
      .def_readonly("savings", &DiseaseTableRow::savings)
      .def("__repr__", [](const DiseaseTableRow& r) {
        std::ostringstream os;
        os << "DiseaseTableRow(name='" << r.name << "', a_star=" << r.a_star
           << ", th_star=" << r.th_star << ", savings=" << r.savings << ")";
        return os.str();
      });

  m.def("lambert_w0", &lambert_w0, py::arg("z"),
        "Principal branch of the Lambert W function on [-1/e, inf).");

  m.def("final_size",
        [](double a, double r0_basic, double s0, double r0_frac) {
          return final_size(a, r0_basic, s0, r0_frac);
        },
        py::arg("a"), py::arg("r0_basic"), py::arg("s0") = 0.99, py::arg("r0_frac") = 0.0,
        "Long-term fraction of the population ever infected.");

  m.def("th_infinity",
        [](double a, double r0_basic, double gamma, double population, double s0, double r0_frac) {
          return th_infinity(a, DiseaseParams::from_r0(r0_basic, gamma), population, s0, r0_frac);
        },
        py::arg("a"), py::arg("r0_basic"), py::arg("gamma") = 0.1, py::arg("population") = 100.0,
        py::arg("s0") = 0.99, py::arg("r0_frac") = 0.0,
        "Long-term home time in child-days, (1-a)*N*r_inf/gamma.");

  m.def("optimize_attendance",
        [](double r0_basic, double gamma, double population, double s0, double r0_frac,
           double tolerance) {
          return optimize_attendance(DiseaseParams::from_r0(r0_basic, gamma), population, s0,
                                     r0_frac, SolverSettings{tolerance, 200});
        },
        py::arg("r0_basic"), py::arg("gamma") = 0.1, py::arg("population") = 100.0,
        py::arg("s0") = 0.99, py::arg("r0_frac") = 0.0, py::arg("tolerance") = 1e-8,
        "Attendance rate maximizing th_infinity over [1e-4, 1].");

  m.def("staff_savings",
        [](double th_inf, double children_per_teacher, double open_days_fraction) {
          return staff_savings(th_inf, StaffingParams{children_per_teacher, open_days_fraction});
        },
        py::arg("th_inf"), py::arg("children_per_teacher") = 6.0,
        py::arg("open_days_fraction") = 5.0 / 7.0,
        "Convert child home-days into saved teacher working days.");

  m.def("simulate",
        [](double a, double beta, double gamma, double population, double s0, double i0,
           std::optional<double> t_end, double dt, double tolerance) {
          const DiseaseParams params(beta, gamma);
          const ScenarioConfig config = make_config(population, s0, i0, 1.0 - s0 - i0, a);
          const SolverSettings settings{tolerance, 200};
          if (t_end.has_value()) return simulate(params, config, *t_end, settings, dt);
          return simulate_to_convergence(params, config, settings, dt);
        },
        py::arg("a"), py::arg("beta") = 0.5, py::arg("gamma") = 0.1, py::arg("population") = 100.0,
        py::arg("s0") = 0.99, py::arg("i0") = 0.01, py::arg("t_end") = std::nullopt,
        py::arg("dt") = kDefaultTimeStep, py::arg("tolerance") = 1e-8,
        "Integrate the outbreak; t_end=None runs until the outbreak has died out.");

  m.def("attack_rate", &attack_rate, py::arg("trajectory"),
        "Fraction ever infected, terminal R/N of a converged trajectory.");

  m.def("sweep",
        [](const std::vector<double>& a_values, const std::vector<double>& r0_values, double gamma,
           double population, double s0, double r0_frac) {
          return sweep(a_values, r0_values, gamma, population, s0, r0_frac);
        },
        py::arg("a_values"), py::arg("r0_values"), py::arg("gamma") = 0.1,
        py::arg("population") = 100.0, py::arg("s0") = 0.99, py::arg("r0_frac") = 0.0,
        "Th(inf) over the (a, R0) lattice plus the optimal-attendance ridge.");

  m.def("disease_table",
        [](std::optional<std::vector<DiseaseEntry>> entries, double population, double s0,
           double r0_frac, double children_per_teacher, double open_days_fraction) {
          return disease_table(entries.value_or(default_disease_catalog()), population, s0,
                               r0_frac, StaffingParams{children_per_teacher, open_days_fraction});
        },
        py::arg("entries") = std::nullopt, py::arg("population") = 100.0, py::arg("s0") = 0.99,
        py::arg("r0_frac") = 0.0, py::arg("children_per_teacher") = 6.0,
        py::arg("open_days_fraction") = 5.0 / 7.0,
        "Optimal attendance and staffing savings per catalog entry.");

  m.def("default_disease_catalog", &default_disease_catalog,
        "The catalog shipped with the command-line tool.");
}
