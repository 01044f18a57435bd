#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hometime/analysis.hpp"
#include "hometime/model.hpp"

namespace hometime {

enum class OutputFormat { csv, json };

/// Parses "csv" or "json"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string& text);

/// Locale-independent formatting with 10 significant digits ("%.10g").
/// All CSV output goes through this so regression tests can compare bytes.
std::string format_number(double value);

/// CSV columns: t,S,I,R,I_a,I_h,T_h_cum (I_a = a*I, I_h = (1-a)*I).
/// JSON mirrors the columns as arrays plus a "meta" object carrying the
/// disease params and scenario config. Throws std::invalid_argument for an
/// empty trajectory.
void write_trajectory(const Trajectory& traj, OutputFormat format, std::ostream& out);

/// Reads back a JSON trajectory written by write_trajectory.
Trajectory read_trajectory_json(std::istream& in);

/// CSV: long-form section `a,R0,Th_inf`, a blank line, then the ridge
/// section `R0,a_star,Th_star`. JSON carries axes, matrix and ridge.
void write_sweep(const SweepGrid& grid, OutputFormat format, std::ostream& out);

/// Reads back a JSON sweep grid written by write_sweep.
SweepGrid read_sweep_json(std::istream& in);

/// Columns: name,r0_used,a_star,Th_star,savings.
void write_disease_table(const std::vector<DiseaseTableRow>& rows, OutputFormat format,
                         std::ostream& out);

/// Optimization result with its savings conversion.
void write_optimization(const OptimizationResult& result, double savings, OutputFormat format,
                        std::ostream& out);

/// Disease catalog CSV: records `name,r0_low,r0_high,r0_used,gamma`, one per
/// line. An optional header line, blank lines and '#' comments are skipped;
/// an empty r0_used field defaults to the midpoint of [r0_low, r0_high].
/// Parse and validation failures throw std::invalid_argument naming the
/// line, field and violated invariant.
std::vector<DiseaseEntry> read_disease_catalog(std::istream& in);

void write_disease_catalog(const std::vector<DiseaseEntry>& entries, std::ostream& out);

}  // namespace hometime
