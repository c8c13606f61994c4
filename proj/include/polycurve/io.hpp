#pragma once

#include <string>
#include <variant>

#include "polycurve/circle_ansatz.hpp"
#include "polycurve/conservation.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/families.hpp"
#include "polycurve/flow.hpp"
#include "polycurve/frenet.hpp"
#include "polycurve/residuals.hpp"

namespace polycurve::io {

/// Reals are serialized with 17 significant digits so parsing reproduces the
/// exact double.
std::string format_real(double value);

using CurveVariant = std::variant<CircleAnsatzCurved, DiscreteCurved>;

/// Parse the curve JSON schema:
///   {"type":"ansatz","terms":[{"a":..,"e_cos":[..],"e_sin":[..]},..],"e0":[..]}
///   {"type":"discrete","L":..,"samples":[[..],..]}
/// Throws InvalidArgument on malformed or schema-violating input.
CurveVariant parse_curve_json(const std::string& text);
CurveVariant read_curve_json(const std::string& path);

std::string curve_to_json(const CircleAnsatzCurved& curve);
std::string curve_to_json(const DiscreteCurved& curve);

std::string to_json(const ResidualReportd& report);
std::string to_csv(const ResidualReportd& report);
std::string to_json(const ConservationReportd& report);
std::string to_csv(const ConservationReportd& report);

std::string frenet_to_csv(const FrenetDatad& data);

std::string classification_csv_header();
std::string classification_csv_row(const ClassificationCheckd& check);

std::string solutions_to_json(const TriharmonicSweepResult<double>& result);
std::string solution_to_json(const AlgebraicSolutiond& solution);

std::string trace_to_json(const EnergyTraced& trace, const std::string& mode, int r);
std::string trace_to_csv(const EnergyTraced& trace);

/// Write text to a file; throws Error with an I/O message on failure.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace polycurve::io
