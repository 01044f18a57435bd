#include "hometime/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hometime {

namespace {

constexpr double kBranchPoint = -0.36787944117144233;  // -1/e

void validate_fractions(double s0, double r0_frac) {
  if (!(s0 >= 0.0 && s0 <= 1.0) || !(r0_frac >= 0.0 && r0_frac <= 1.0) ||
      s0 + r0_frac > 1.0 + 1e-12) {
    throw std::invalid_argument("final_size: s0 and r0_frac must be fractions with s0 + r0_frac <= 1");
  }
}

// Bisection on u = 1 - r for u - s0*exp(-q*(1 - u - r0_frac)) = 0, u in [0, s0].
double final_size_implicit(double q, double s0, double r0_frac) {
  auto h = [&](double u) { return u - s0 * std::exp(-q * (1.0 - u - r0_frac)); };
  double lo = 0.0;   // h(0) < 0
  double hi = s0;    // h(s0) = s0*(1 - exp(-q*i0)) >= 0
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 1.0 - 0.5 * (lo + hi);
}

}  // namespace

void StaffingParams::validate() const {
  if (!(children_per_teacher >= 1.0) || !std::isfinite(children_per_teacher)) {
    throw std::invalid_argument("StaffingParams: children_per_teacher must be >= 1");
  }
  if (!(open_days_fraction > 0.0 && open_days_fraction <= 1.0)) {
    throw std::invalid_argument("StaffingParams: open_days_fraction must be in (0, 1]");
  }
}

void DiseaseEntry::validate() const {
  if (name.empty()) {
    throw std::invalid_argument("DiseaseEntry: name must be non-empty");
  }
  if (!(r0_low > 0.0) || !(r0_low <= r0_used) || !(r0_used <= r0_high)) {
    throw std::invalid_argument("DiseaseEntry '" + name +
                                "': violates 0 < r0_low <= r0_used <= r0_high");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("DiseaseEntry '" + name + "': gamma must be a positive rate");
  }
}

double final_size(double a, double r0_basic, double s0, double r0_frac) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("final_size: attendance must lie in [0, 1]");
  }
  if (!(r0_basic > 0.0) || !std::isfinite(r0_basic)) {
    throw std::invalid_argument("final_size: r0_basic must be positive and finite");
  }
  validate_fractions(s0, r0_frac);

  if (a == 0.0) return 1.0 - s0;  // no transmission: only the seeded cases recover

  const double q = a * r0_basic;
  const double x = -s0 * q * std::exp(-q * (1.0 - r0_frac));
  if (x <= kBranchPoint + 1e-12) {
    // Removable singularity of the closed form (q*(1-r0) near 1 with i0 near
    // 0): W0 is sqrt-conditioned here, the implicit relation is not.
    return final_size_implicit(q, s0, r0_frac);
  }
  return 1.0 + lambert_w0(x) / q;
}

double th_infinity(double a, const DiseaseParams& params, double population, double s0,
                   double r0_frac) {
  if (!(population > 0.0) || !std::isfinite(population)) {
    throw std::invalid_argument("th_infinity: population must be positive");
  }
  if (a == 1.0) return 0.0;
  return (1.0 - a) * population * final_size(a, params.r0_basic(), s0, r0_frac) / params.gamma;
}

OptimizationResult optimize_attendance(const DiseaseParams& params, double population, double s0,
                                       double r0_frac, const SolverSettings& settings) {
  auto objective = [&](double a) { return th_infinity(a, params, population, s0, r0_frac); };
  const ScalarMaximum peak =
      maximize_scalar(objective, BracketedInterval(kMinAttendance, 1.0), settings);
  return {peak.x, peak.value, peak.evaluations, settings.tolerance};
}

double staff_savings(double th_inf, const StaffingParams& staffing) {
  staffing.validate();
  if (!(th_inf >= 0.0)) {
    throw std::invalid_argument("staff_savings: th_inf must be >= 0");
  }
  return th_inf * (1.0 / staffing.children_per_teacher) * staffing.open_days_fraction;
}

namespace {

void validate_grid(const std::vector<double>& values, const std::string& label, bool is_attendance) {
  if (values.empty()) {
    throw std::invalid_argument("sweep: " + label + " grid must be non-empty");
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (is_attendance && !(values[k] > 0.0 && values[k] <= 1.0)) {
      throw std::invalid_argument("sweep: " + label + " values must lie in (0, 1]");
    }
    if (!is_attendance && !(values[k] > 0.0)) {
      throw std::invalid_argument("sweep: " + label + " values must be positive");
    }
    if (k > 0 && !(values[k] > values[k - 1])) {
      throw std::invalid_argument("sweep: " + label + " grid must be strictly ascending");
    }
  }
}

}  // namespace

SweepGrid sweep(const std::vector<double>& a_values, const std::vector<double>& r0_values,
                double gamma, double population, double s0, double r0_frac) {
  validate_grid(a_values, "attendance", true);
  validate_grid(r0_values, "R0", false);

  SweepGrid grid;
  grid.a_values = a_values;
  grid.r0_values = r0_values;
  grid.th_matrix.assign(a_values.size(), std::vector<double>(r0_values.size(), 0.0));

  for (std::size_t i = 0; i < a_values.size(); ++i) {
    for (std::size_t j = 0; j < r0_values.size(); ++j) {
      try {
        const DiseaseParams params = DiseaseParams::from_r0(r0_values[j], gamma);
        grid.th_matrix[i][j] = th_infinity(a_values[i], params, population, s0, r0_frac);
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep: cell (a=" + std::to_string(a_values[i]) +
                                 ", R0=" + std::to_string(r0_values[j]) + ") failed: " + e.what());
      }
    }
  }

  grid.ridge.reserve(r0_values.size());
  for (double r0 : r0_values) {
    try {
      const DiseaseParams params = DiseaseParams::from_r0(r0, gamma);
      const OptimizationResult best = optimize_attendance(params, population, s0, r0_frac);
      grid.ridge.push_back({r0, best.a_star, best.th_star});
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep: ridge at R0=" + std::to_string(r0) + " failed: " + e.what());
    }
  }
  return grid;
}

std::vector<DiseaseTableRow> disease_table(const std::vector<DiseaseEntry>& entries,
                                           double population, double s0, double r0_frac,
                                           const StaffingParams& staffing) {
  std::vector<DiseaseTableRow> rows;
  rows.reserve(entries.size());
  for (const DiseaseEntry& entry : entries) {
    const std::string where = "disease_table: row '" + entry.name + "': ";
    try {
      entry.validate();
      const DiseaseParams params = DiseaseParams::from_r0(entry.r0_used, entry.gamma);
      const OptimizationResult best = optimize_attendance(params, population, s0, r0_frac);
      rows.push_back({entry.name, entry.r0_used, best.a_star, best.th_star,
                      staff_savings(best.th_star, staffing)});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
  }
  return rows;
}

std::vector<DiseaseEntry> default_disease_catalog() {
  auto mid = [](double lo, double hi) { return 0.5 * (lo + hi); };
  return {
      {"Measles", 12.0, 18.0, mid(12.0, 18.0), 0.1},
      {"COVID-19 (Omicron)", 9.5, 9.5, 9.5, 0.1},
      {"COVID-19 (ancestral)", 2.4, 3.4, mid(2.4, 3.4), 0.1},
      {"Influenza (seasonal)", 1.2, 1.4, mid(1.2, 1.4), 0.1},
  };
}

}  // namespace hometime
