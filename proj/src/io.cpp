#include "hometime/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace hometime {

using json = nlohmann::ordered_json;

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("format: expected 'csv' or 'json', got '" + text + "'");
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

namespace {

json meta_json(const Trajectory& traj) {
  return json{{"params", {{"beta", traj.params.beta}, {"gamma", traj.params.gamma}}},
              {"config",
               {{"population", traj.config.population},
                {"s0", traj.config.s0},
                {"i0", traj.config.i0},
                {"r0_frac", traj.config.r0_frac},
                {"attendance", traj.config.attendance}}}};
}

void dump_json(const json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_field(const std::string& text, int line_no, const char* field) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("catalog line " + std::to_string(line_no) + ", field '" + field +
                                "': cannot parse '" + text + "' as a number");
  }
  return value;
}

}  // namespace

void write_trajectory(const Trajectory& traj, OutputFormat format, std::ostream& out) {
  if (traj.samples.empty()) {
    throw std::invalid_argument("write_trajectory: empty trajectory");
  }
  const double a = traj.config.attendance;

  if (format == OutputFormat::csv) {
    out << "t,S,I,R,I_a,I_h,T_h_cum\n";
    for (const PopulationState& s : traj.samples) {
      out << format_number(s.t) << ',' << format_number(s.s) << ',' << format_number(s.i) << ','
          << format_number(s.r) << ',' << format_number(a * s.i) << ','
          << format_number((1.0 - a) * s.i) << ',' << format_number(s.th_cum) << '\n';
    }
    return;
  }

  json doc;
  doc["meta"] = meta_json(traj);
  json t = json::array(), S = json::array(), I = json::array(), R = json::array();
  json Ia = json::array(), Ih = json::array(), Th = json::array();
  for (const PopulationState& s : traj.samples) {
    t.push_back(s.t);
    S.push_back(s.s);
    I.push_back(s.i);
    R.push_back(s.r);
    Ia.push_back(a * s.i);
    Ih.push_back((1.0 - a) * s.i);
    Th.push_back(s.th_cum);
  }
  doc["t"] = std::move(t);
  doc["S"] = std::move(S);
  doc["I"] = std::move(I);
  doc["R"] = std::move(R);
  doc["I_a"] = std::move(Ia);
  doc["I_h"] = std::move(Ih);
  doc["T_h_cum"] = std::move(Th);
  dump_json(doc, out);
}

Trajectory read_trajectory_json(std::istream& in) {
  const json doc = json::parse(in);
  const json& params = doc.at("meta").at("params");
  const json& config = doc.at("meta").at("config");
  Trajectory traj{
      DiseaseParams(params.at("beta").get<double>(), params.at("gamma").get<double>()),
      ScenarioConfig(config.at("population").get<double>(), config.at("s0").get<double>(),
                     config.at("i0").get<double>(), config.at("r0_frac").get<double>(),
                     config.at("attendance").get<double>()),
      {}};
  const json& t = doc.at("t");
  const json& S = doc.at("S");
  const json& I = doc.at("I");
  const json& R = doc.at("R");
  const json& Th = doc.at("T_h_cum");
  if (t.size() != S.size() || t.size() != I.size() || t.size() != R.size() ||
      t.size() != Th.size()) {
    throw std::invalid_argument("read_trajectory_json: column lengths differ");
  }
  traj.samples.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    traj.samples.push_back({t[k].get<double>(), S[k].get<double>(), I[k].get<double>(),
                            R[k].get<double>(), Th[k].get<double>()});
  }
  return traj;
}

void write_sweep(const SweepGrid& grid, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "a,R0,Th_inf\n";
    for (std::size_t j = 0; j < grid.r0_values.size(); ++j) {
      for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
        out << format_number(grid.a_values[i]) << ',' << format_number(grid.r0_values[j]) << ','
            << format_number(grid.th_matrix[i][j]) << '\n';
      }
    }
    out << "\nR0,a_star,Th_star\n";
    for (const RidgePoint& p : grid.ridge) {
      out << format_number(p.r0) << ',' << format_number(p.a_star) << ','
          << format_number(p.th_star) << '\n';
    }
    return;
  }

  json doc;
  doc["a_values"] = grid.a_values;
  doc["r0_values"] = grid.r0_values;
  doc["th_matrix"] = grid.th_matrix;
  json ridge = json::array();
  for (const RidgePoint& p : grid.ridge) {
    ridge.push_back({{"r0", p.r0}, {"a_star", p.a_star}, {"th_star", p.th_star}});
  }
  doc["ridge"] = std::move(ridge);
  dump_json(doc, out);
}

SweepGrid read_sweep_json(std::istream& in) {
  const json doc = json::parse(in);
  SweepGrid grid;
  grid.a_values = doc.at("a_values").get<std::vector<double>>();
  grid.r0_values = doc.at("r0_values").get<std::vector<double>>();
  grid.th_matrix = doc.at("th_matrix").get<std::vector<std::vector<double>>>();
  for (const json& p : doc.at("ridge")) {
    grid.ridge.push_back(
        {p.at("r0").get<double>(), p.at("a_star").get<double>(), p.at("th_star").get<double>()});
  }
  return grid;
}

void write_disease_table(const std::vector<DiseaseTableRow>& rows, OutputFormat format,
                         std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "name,r0_used,a_star,Th_star,savings\n";
    for (const DiseaseTableRow& row : rows) {
      out << row.name << ',' << format_number(row.r0_used) << ',' << format_number(row.a_star)
          << ',' << format_number(row.th_star) << ',' << format_number(row.savings) << '\n';
    }
    return;
  }

  json doc = json::array();
  for (const DiseaseTableRow& row : rows) {
    doc.push_back({{"name", row.name},
                   {"r0_used", row.r0_used},
                   {"a_star", row.a_star},
                   {"th_star", row.th_star},
                   {"savings", row.savings}});
  }
  dump_json(doc, out);
}

void write_optimization(const OptimizationResult& result, double savings, OutputFormat format,
                        std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "a_star,Th_star,savings\n";
    out << format_number(result.a_star) << ',' << format_number(result.th_star) << ','
        << format_number(savings) << '\n';
    return;
  }
  dump_json(json{{"a_star", result.a_star},
                 {"th_star", result.th_star},
                 {"savings", savings},
                 {"evaluations", result.evaluations},
                 {"tolerance", result.tolerance_used}},
            out);
}

std::vector<DiseaseEntry> read_disease_catalog(std::istream& in) {
  std::vector<DiseaseEntry> entries;
  std::string line;
  int line_no = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    const std::vector<std::string> fields = split_fields(stripped);
    if (!seen_record && !fields.empty() && fields[0] == "name") continue;  // header
    seen_record = true;

    if (fields.size() != 5) {
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ": expected 5 fields (name,r0_low,r0_high,r0_used,gamma), got " +
                                  std::to_string(fields.size()));
    }
    DiseaseEntry entry;
    entry.name = fields[0];
    if (entry.name.empty()) {
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ", field 'name': must be non-empty");
    }
    entry.r0_low = parse_field(fields[1], line_no, "r0_low");
    entry.r0_high = parse_field(fields[2], line_no, "r0_high");
    entry.r0_used = fields[3].empty() ? 0.5 * (entry.r0_low + entry.r0_high)
                                      : parse_field(fields[3], line_no, "r0_used");
    entry.gamma = parse_field(fields[4], line_no, "gamma");
    try {
      entry.validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("catalog line " + std::to_string(line_no) + ": " + e.what());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

void write_disease_catalog(const std::vector<DiseaseEntry>& entries, std::ostream& out) {
  out << "name,r0_low,r0_high,r0_used,gamma\n";
  for (const DiseaseEntry& entry : entries) {
    out << entry.name << ',' << format_number(entry.r0_low) << ',' << format_number(entry.r0_high)
        << ',' << format_number(entry.r0_used) << ',' << format_number(entry.gamma) << '\n';
  }
}

}  // namespace hometime
