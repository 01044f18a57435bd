#pragma once

#include <string>
#include <vector>

#include "hometime/model.hpp"
#include "hometime/numerics.hpp"

namespace hometime {

struct OptimizationResult {
  double a_star;
  double th_star;  // child-days
  int evaluations;
  double tolerance_used;
};

/// Conversion factors from child home-days to saved teacher working days.
struct StaffingParams {
  double children_per_teacher = 6.0;
  double open_days_fraction = 5.0 / 7.0;

  void validate() const;
};

/// One catalog record. r0_used defaults to the midpoint of [r0_low, r0_high]
/// when a catalog leaves it blank.
struct DiseaseEntry {
  std::string name;
  double r0_low;
  double r0_high;
  double r0_used;
  double gamma;

  void validate() const;
};

struct DiseaseTableRow {
  std::string name;
  double r0_used;
  double a_star;
  double th_star;
  double savings;
};

struct RidgePoint {
  double r0;
  double a_star;
  double th_star;
};

struct SweepGrid {
  std::vector<double> a_values;
  std::vector<double> r0_values;
  // th_matrix[i][j] = Th(inf) at a_values[i], r0_values[j]
  std::vector<std::vector<double>> th_matrix;
  std::vector<RidgePoint> ridge;
};

/// Lower end of the attendance search interval. The closed-form final size
/// is singular at a = 0, so optimization starts just inside the domain.
inline constexpr double kMinAttendance = 1e-4;

/// Long-term fraction of the population ever infected:
///   r_inf = 1 + W0(-s0 * a*R0 * exp(-a*R0 * (1 - r0_frac))) / (a*R0).
/// At a = 0 the transmission-free limit 1 - s0 is returned (only the
/// initially infected recover). Near the branch point of W0, where the
/// formula is a removable singularity and W0 loses precision, the implicit
/// relation 1 - r = s0 * exp(-a*R0*(r - r0_frac)) is solved by bisection
/// instead.
double final_size(double a, double r0_basic, double s0, double r0_frac);

/// Long-term home time in child-days: (1 - a) * N * r_inf / gamma.
/// Exactly zero at a = 1.
double th_infinity(double a, const DiseaseParams& params, double population, double s0,
                   double r0_frac);

/// Attendance rate maximizing th_infinity over [1e-4, 1], via golden-section
/// search (the objective is smooth and unimodal there).
OptimizationResult optimize_attendance(const DiseaseParams& params, double population, double s0,
                                       double r0_frac, const SolverSettings& settings = {});

/// Saved teacher working days: th_inf * (1 / children_per_teacher) * open_days_fraction.
double staff_savings(double th_inf, const StaffingParams& staffing = {});

/// Th(inf) over the (a, R0) lattice plus the optimal-attendance ridge a*(R0).
/// Grids must be non-empty and strictly ascending, with a in (0, 1].
/// A failing cell aborts the sweep with its location attached.
SweepGrid sweep(const std::vector<double>& a_values, const std::vector<double>& r0_values,
                double gamma, double population, double s0, double r0_frac);

/// One optimized row per catalog entry. Failures carry the disease name.
std::vector<DiseaseTableRow> disease_table(const std::vector<DiseaseEntry>& entries,
                                           double population, double s0, double r0_frac,
                                           const StaffingParams& staffing = {});

/// The catalog shipped with the tool (four common childhood diseases, all
/// with a 10-day recovery period).
std::vector<DiseaseEntry> default_disease_catalog();

}  // namespace hometime
