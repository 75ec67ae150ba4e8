#include "gshift/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gshift {

std::string_view version_string() { return GSHIFT_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(k).dump();
        out += ": ";
        dump_into(v, indent + 2, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump_into(j[i], indent + 2, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  out += "\n";
  return out;
}

Json report_envelope(std::string_view command, const Json& config) {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = std::string(version_string());
  j["command"] = std::string(command);
  j["config"] = config;
  return j;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CSV row width does not match the header");
  rows_.push_back(std::move(cells));
  return *this;
}

namespace {

void append_cell(const std::string& cell, std::string& out) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_line(const std::vector<std::string>& cells, std::string& out) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    append_cell(cells[i], out);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_line(header_, out);
  for (const auto& r : rows_) append_line(r, out);
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Json to_json(const ShiftKernelConfig& cfg) {
  Json j;
  j["si"] = std::string(to_string(cfg.si));
  j["quadrature_size"] = cfg.quadrature_size;
  j["enforce_normalization"] = cfg.enforce_normalization;
  j["interp_degree"] = cfg.interp_degree;
  return j;
}

Json to_json(const SpaceParams& params) {
  Json j;
  j["p"] = params.p;
  j["alpha"] = params.alpha;
  return j;
}

Json to_json(const DecayFit& fit) {
  Json j;
  j["lambda_hat"] = fit.lambda_hat;
  j["log_C_hat"] = fit.log_C_hat;
  j["r_squared"] = fit.r_squared;
  j["points"] = fit.points;
  return j;
}

Json to_json(const SequenceFit& fit) {
  Json j;
  j["valid"] = fit.valid;
  j["used"] = Json::array();
  for (bool u : fit.used) j["used"].push_back(u);
  if (fit.valid) j["fit"] = to_json(fit.fit);
  if (!fit.note.empty()) j["note"] = fit.note;
  return j;
}

namespace {

Json jacobi_json(const JacobiParams& jp) { return Json::array({jp.a, jp.b}); }

}  // namespace

Json to_json(const KernelValidationReport& rep) {
  Json j;
  j["x_grid_size"] = rep.x_grid_size;
  j["y_grid_size"] = rep.y_grid_size;
  j["quadrature_size"] = rep.quadrature_size;
  j["max_degree"] = rep.max_degree;
  j["expansion_basis"] = jacobi_json(rep.basis.expansion);
  j["multiplier_basis"] = jacobi_json(rep.basis.multiplier);
  j["interpretations"] = Json::array();
  for (const auto& in : rep.interpretations) {
    Json ij;
    ij["si"] = std::string(to_string(in.si));
    ij["normalization_passed"] = in.normalization_passed;
    ij["properties"] = Json::array();
    for (const auto& p : in.properties) {
      ij["properties"].push_back(
          Json{{"property", p.property}, {"residual", p.residual}, {"tolerance", p.tolerance}, {"passed", p.passed}});
    }
    j["interpretations"].push_back(ij);
  }
  j["any_passed"] = rep.any_passed;
  if (rep.any_passed) j["accepted"] = std::string(to_string(rep.accepted));
  return j;
}

Json to_json(const ModulusResult& m) {
  Json j;
  j["delta"] = m.delta;
  j["value"] = m.value;
  j["steps"] = m.steps;
  j["level0_value"] = m.level0_value;
  j["equal_step_value"] = m.equal_step_value;
  j["levels"] = m.levels;
  j["evaluations"] = m.evaluations;
  return j;
}

Json to_json(const JacksonReport& rep) {
  Json j;
  j["function"] = rep.function_id;
  j["params"] = to_json(rep.params);
  j["r"] = rep.r;
  j["cells"] = Json::array();
  for (const auto& c : rep.cells) {
    j["cells"].push_back(Json{{"n", c.n}, {"E", c.E}, {"omega", c.omega}, {"ratio", c.ratio}, {"status", c.status}});
  }
  j["split_n"] = rep.split_n;
  j["max_ratio"] = rep.max_ratio;
  j["lower_max"] = rep.lower_max;
  j["upper_max"] = rep.upper_max;
  j["argmax_n"] = rep.argmax_n;
  j["refined_ratio"] = rep.refined_ratio;
  j["refinement_change"] = rep.refinement_change;
  j["all_zero"] = rep.all_zero;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["reason"] = rep.reason;
  return j;
}

Json to_json(const EmbeddingReport& rep) {
  Json j;
  j["kind"] = rep.kind;
  j["function"] = rep.function_id;
  j["params"] = to_json(rep.params);
  j["r"] = rep.r;
  if (rep.lambda_class) j["lambda"] = *rep.lambda_class;
  j["n"] = rep.ns;
  j["E"] = rep.E;
  j["omega"] = rep.omega;
  j["fit_E"] = to_json(rep.fit_E);
  j["fit_omega"] = to_json(rep.fit_omega);
  j["lambda_E"] = rep.lambda_E;
  j["lambda_omega"] = rep.lambda_omega;
  j["tolerance"] = rep.tolerance;
  j["holds"] = rep.holds;
  if (rep.kind == "direct") {
    j["dyadic"] = Json::array();
    for (const auto& d : rep.dyadic) {
      j["dyadic"].push_back(Json{{"k", d.k}, {"E", d.E}, {"Q_norm", d.Q_norm}, {"triangle_bound", d.triangle_bound}});
    }
    j["triangle_ok"] = rep.triangle_ok;
    j["fit_Q"] = to_json(rep.fit_Q);
    j["lambda_Q"] = rep.lambda_Q;
    j["q_slope_consistent"] = rep.q_slope_consistent;
  } else {
    j["jackson_lower_max"] = rep.jackson_lower_max;
    j["jackson_upper_max"] = rep.jackson_upper_max;
    j["jackson_bounded"] = rep.jackson_bounded;
  }
  j["verdict"] = std::string(to_string(rep.verdict));
  j["reason"] = rep.reason;
  return j;
}

Json to_json(const CoincidenceReport& rep) {
  Json j;
  j["function"] = rep.function_id;
  j["params"] = to_json(rep.params);
  j["r"] = rep.r_values;
  j["n"] = rep.ns;
  j["E"] = rep.E;
  j["fit_E"] = to_json(rep.fit_E);
  j["lambda_E"] = rep.lambda_E;
  j["rows"] = Json::array();
  for (const auto& row : rep.rows) {
    Json rj;
    rj["r"] = row.r;
    rj["omega"] = row.fit_omega.values;
    rj["fit_omega"] = to_json(row.fit_omega);
    rj["lambda_omega"] = row.lambda_omega;
    rj["direct_holds"] = row.direct_holds;
    rj["inverse_holds"] = row.inverse_holds;
    j["rows"].push_back(rj);
  }
  j["max_gap"] = rep.max_gap;
  j["tolerance"] = rep.tolerance;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["reason"] = rep.reason;
  return j;
}

Json to_json(const BasisReport& rep) {
  Json j;
  j["max_degree"] = rep.max_degree;
  j["y"] = rep.ys;
  auto scores = [](const std::vector<BasisScore>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(Json{{"a", s.params.a}, {"b", s.params.b}, {"score", s.score}});
    return a;
  };
  j["expansion"] = jacobi_json(rep.expansion);
  j["expansion_score"] = rep.expansion_score;
  j["expansion_runner_up"] = rep.expansion_runner_up;
  j["multiplier"] = jacobi_json(rep.multiplier);
  j["multiplier_score"] = rep.multiplier_score;
  j["multiplier_runner_up"] = rep.multiplier_runner_up;
  j["expansion_scores"] = scores(rep.expansion_scores);
  j["multiplier_scores"] = scores(rep.multiplier_scores);
  return j;
}

}  // namespace gshift
