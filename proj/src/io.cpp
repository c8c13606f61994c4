#include "polycurve/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polycurve::io {

namespace {

using nlohmann::json;

std::string real_array(const Eigen::Ref<const Eigen::VectorXd>& values) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_real(values[i]);
  }
  out += "]";
  return out;
}

std::string nested_real_array(const SampleMatrixd& rows) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (i) out += ",";
    out += real_array(rows.row(i).transpose());
  }
  out += "]";
  return out;
}

AmbientVectord vector_from_json(const json& array) {
  if (!array.is_array() || array.size() < 3)
    throw InvalidArgument("curve JSON: vectors need at least 3 coordinates");
  AmbientVectord v(array.size());
  for (size_t i = 0; i < array.size(); ++i) {
    if (!array[i].is_number()) throw InvalidArgument("curve JSON: non-numeric coordinate");
    v[static_cast<Eigen::Index>(i)] = array[i].get<double>();
  }
  return v;
}

}  // namespace

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // normalize the sign of zero
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CurveVariant parse_curve_json(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw InvalidArgument("curve JSON: parse error");
  if (!root.is_object() || !root.contains("type"))
    throw InvalidArgument("curve JSON: missing type");
  const std::string type = root["type"].get<std::string>();
  if (type == "ansatz") {
    if (!root.contains("terms") || !root["terms"].is_array() || root["terms"].empty())
      throw InvalidArgument("curve JSON: ansatz needs a nonempty terms array");
    CircleAnsatzCurved curve;
    for (const auto& term : root["terms"]) {
      if (!term.contains("a") || !term.contains("e_cos") || !term.contains("e_sin"))
        throw InvalidArgument("curve JSON: term needs a, e_cos, e_sin");
      CircleTerm<double> t;
      t.frequency = term["a"].get<double>();
      t.cos_axis = vector_from_json(term["e_cos"]);
      t.sin_axis = vector_from_json(term["e_sin"]);
      curve.terms.push_back(std::move(t));
    }
    if (root.contains("e0"))
      curve.constant_axis = vector_from_json(root["e0"]);
    else
      curve.constant_axis = AmbientVectord::Zero(curve.terms.front().cos_axis.size());
    curve.validate();
    return curve;
  }
  if (type == "discrete") {
    if (!root.contains("L") || !root.contains("samples"))
      throw InvalidArgument("curve JSON: discrete needs L and samples");
    DiscreteCurved curve;
    curve.period = root["L"].get<double>();
    const auto& samples = root["samples"];
    if (!samples.is_array() || samples.empty())
      throw InvalidArgument("curve JSON: samples must be a nonempty array");
    const AmbientVectord first = vector_from_json(samples[0]);
    curve.samples.resize(static_cast<Eigen::Index>(samples.size()), first.size());
    curve.samples.row(0) = first.transpose();
    for (size_t i = 1; i < samples.size(); ++i) {
      const AmbientVectord row = vector_from_json(samples[i]);
      if (row.size() != first.size())
        throw InvalidArgument("curve JSON: inconsistent sample dimensions");
      curve.samples.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    curve.validate();
    return curve;
  }
  throw InvalidArgument("curve JSON: unknown type '" + type + "'");
}

CurveVariant read_curve_json(const std::string& path) {
  return parse_curve_json(read_file(path));
}

std::string curve_to_json(const CircleAnsatzCurved& curve) {
  std::string out = "{\"type\":\"ansatz\",\"terms\":[";
  for (size_t i = 0; i < curve.terms.size(); ++i) {
    const auto& t = curve.terms[i];
    if (i) out += ",";
    out += "{\"a\":" + format_real(t.frequency);
    out += ",\"e_cos\":" + real_array(t.cos_axis);
    out += ",\"e_sin\":" + real_array(t.sin_axis) + "}";
  }
  out += "],\"e0\":" + real_array(curve.constant_axis) + "}";
  return out;
}

std::string curve_to_json(const DiscreteCurved& curve) {
  return "{\"type\":\"discrete\",\"L\":" + format_real(curve.period) +
         ",\"samples\":" + nested_real_array(curve.samples) + "}";
}

std::string to_json(const ResidualReportd& report) {
  std::string out = "{\"kind\":\"" + std::string(to_string(report.kind)) + "\"";
  out += ",\"r\":" + std::to_string(report.r);
  out += ",\"max_norm\":" + format_real(report.max_norm);
  out += ",\"l2_norm\":" + format_real(report.l2_norm);
  out += ",\"s\":" + real_array(report.s);
  out += ",\"per_sample\":" + real_array(report.per_sample);
  if (report.lambda_estimate.size())
    out += ",\"lambda_estimate\":" + real_array(report.lambda_estimate);
  out += "}";
  return out;
}

std::string to_csv(const ResidualReportd& report) {
  std::string out = "kind,r,max_norm,l2_norm\n";
  out += std::string(to_string(report.kind)) + "," + std::to_string(report.r) + "," +
         format_real(report.max_norm) + "," + format_real(report.l2_norm) + "\n";
  return out;
}

std::string to_json(const ConservationReportd& report) {
  std::string out = "{\"law\":\"" + std::string(to_string(report.law)) + "\"";
  out += ",\"drift\":" + format_real(report.drift);
  out += ",\"max_abs\":" + format_real(report.max_abs);
  out += ",\"s\":" + real_array(report.s);
  out += ",\"values\":" + real_array(report.values);
  out += "}";
  return out;
}

std::string to_csv(const ConservationReportd& report) {
  std::string out = "law,drift,max_abs\n";
  out += std::string(to_string(report.law)) + "," + format_real(report.drift) + "," +
         format_real(report.max_abs) + "\n";
  return out;
}

std::string frenet_to_csv(const FrenetDatad& data) {
  const Eigen::Index dim = data.tangent.cols();
  std::string out = "s,k,tau,torsion_defined";
  auto vec_cols = [&](const std::string& name) {
    for (Eigen::Index c = 0; c < dim; ++c) out += "," + name + "_" + std::to_string(c);
  };
  vec_cols("T");
  vec_cols("F2");
  vec_cols("F3");
  out += "\n";
  for (Eigen::Index i = 0; i < data.sample_count(); ++i) {
    out += format_real(data.s[i]) + "," + format_real(data.k[i]) + "," +
           format_real(data.tau[i]) + "," + (data.torsion_defined[i] ? "1" : "0");
    for (Eigen::Index c = 0; c < dim; ++c) out += "," + format_real(data.tangent(i, c));
    for (Eigen::Index c = 0; c < dim; ++c) out += "," + format_real(data.normal(i, c));
    for (Eigen::Index c = 0; c < dim; ++c) out += "," + format_real(data.binormal(i, c));
    out += "\n";
  }
  return out;
}

std::string classification_csv_header() { return "K,r,k,tau,lhs,rhs,satisfied"; }

std::string classification_csv_row(const ClassificationCheckd& check) {
  return format_real(check.K) + "," + std::to_string(check.r) + "," + format_real(check.k) +
         "," + format_real(check.tau) + "," + format_real(check.lhs) + "," +
         format_real(check.rhs) + "," + (check.satisfied ? "true" : "false");
}

std::string solution_to_json(const AlgebraicSolutiond& solution) {
  std::string out = "{\"unknowns\":{";
  bool first = true;
  for (const auto& [name, value] : solution.unknowns) {
    if (!first) out += ",";
    first = false;
    out += "\"" + name + "\":" + format_real(value);
  }
  out += "},\"residual\":" + format_real(solution.residual);
  out += ",\"is_geodesic\":" + std::string(solution.is_geodesic ? "true" : "false") + "}";
  return out;
}

std::string solutions_to_json(const TriharmonicSweepResult<double>& result) {
  std::string out = "{\"solutions\":[";
  for (size_t i = 0; i < result.solutions.size(); ++i) {
    if (i) out += ",";
    out += solution_to_json(result.solutions[i]);
  }
  out += "],\"diverged_seeds\":" + std::to_string(result.diverged_seeds);
  out += ",\"infeasible_seeds\":" + std::to_string(result.infeasible_seeds) + "}";
  return out;
}

std::string trace_to_json(const EnergyTraced& trace, const std::string& mode, int r) {
  std::string out = "{\"mode\":\"" + mode + "\",\"r\":" + std::to_string(r);
  out += ",\"converged\":" + std::string(trace.converged ? "true" : "false");
  out += ",\"stop_reason\":\"" + trace.stop_reason + "\"";
  out += ",\"accepted_steps\":" + std::to_string(trace.accepted_steps);
  out += ",\"final_gradient_norm\":" + format_real(trace.final_gradient_norm);
  if (mode == "restricted") {
    out += ",\"final_alpha_sq\":" + format_real(trace.final_alpha_sq);
    out += ",\"final_a_sq\":" + format_real(trace.final_a_sq);
  }
  out += ",\"iterations\":[";
  for (size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& row = trace.iterations[i];
    if (i) out += ",";
    out += "{\"step\":" + std::to_string(row.step);
    out += ",\"energy\":" + format_real(row.energy);
    out += ",\"constraint_violation\":" + format_real(row.constraint_violation);
    out += ",\"step_size\":" + format_real(row.step_size) + "}";
  }
  out += "],\"final_curve\":" + curve_to_json(trace.final_curve) + "}";
  return out;
}

std::string trace_to_csv(const EnergyTraced& trace) {
  std::string out = "step,energy\n";
  for (const auto& row : trace.iterations)
    out += std::to_string(row.step) + "," + format_real(row.energy) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw Error("cannot open for writing: " + path);
  stream << text;
  if (!stream) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw Error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

}  // namespace polycurve::io
