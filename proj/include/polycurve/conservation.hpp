#pragma once

#include <cmath>
#include <utility>

#include "polycurve/covariant.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/field.hpp"
#include "polycurve/jet.hpp"
#include "polycurve/residuals.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

enum class ConservationLaw { TriC1, TriC2, FourLaw };

inline const char* to_string(ConservationLaw law) {
  switch (law) {
    case ConservationLaw::TriC1: return "tri_c1";
    case ConservationLaw::TriC2: return "tri_c2";
    case ConservationLaw::FourLaw: return "four_law";
  }
  return "unknown";
}

/// Scalar quantity that is constant along solutions; drift measures how far
/// from constant it is, max_abs how far from zero.
template <typename Scalar>
struct ConservationReport {
  ConservationLaw law{};
  ScalarSamples<Scalar> s;
  ScalarSamples<Scalar> values;
  Scalar drift{};
  Scalar max_abs{};

  void finalize() {
    drift = values.size() ? values.maxCoeff() - values.minCoeff() : Scalar(0);
    max_abs = values.size() ? values.cwiseAbs().maxCoeff() : Scalar(0);
  }
};

using ConservationReportd = ConservationReport<double>;

namespace detail {

/// c1 = (|V1|^2)'' - |V2|^2
template <typename Vec>
auto tri_c1_field(const std::vector<Vec>& v) {
  return dot(v[1], v[1]).derivative(2) - dot(v[2], v[2]);
}

/// c2 = 1/2 (|V2|^2)'' - 3/2 |V3|^2 + 1/2 |V2|^2 - |V1|^4
template <typename Vec>
auto tri_c2_field(const std::vector<Vec>& v) {
  using S = typename Vec::ScalarType;
  const auto n1 = dot(v[1], v[1]);
  const auto n2 = dot(v[2], v[2]);
  return S(0.5) * n2.derivative(2) - S(1.5) * dot(v[3], v[3]) + S(0.5) * n2 - n1 * n1;
}

/// F = (|V1|^2)'''' - 2 (|V2|^2)'' + |V3|^2; F' is the printed 4-harmonic law,
/// so constancy of F is equivalent to it for smooth curves.
template <typename Vec>
auto four_law_field(const std::vector<Vec>& v) {
  using S = typename Vec::ScalarType;
  return dot(v[1], v[1]).derivative(4) - S(2) * dot(v[2], v[2]).derivative(2) +
         dot(v[3], v[3]);
}

template <typename Scalar, typename Fn>
ConservationReport<Scalar> ansatz_conservation(const CircleAnsatzCurve<Scalar>& curve,
                                               ConservationLaw law, int stack_order,
                                               int jet_order, Fn&& fn, Eigen::Index n_eval) {
  auto [grid, window] = default_grid(curve, n_eval);
  (void)window;
  ConservationReport<Scalar> report;
  report.law = law;
  report.s = grid;
  report.values.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const VectorJet<Scalar> gamma = curve_jet(curve, grid[i], jet_order);
    const auto v = covariant_fields(gamma, stack_order);
    report.values[i] = fn(v).value();
  }
  report.finalize();
  return report;
}

template <typename Scalar, typename Fn>
ConservationReport<Scalar> grid_conservation(const DiscreteCurve<Scalar>& curve,
                                             ConservationLaw law, int stack_order, Fn&& fn) {
  GridVectorField<Scalar> gamma(curve.samples, curve.period);
  const auto v = covariant_fields(gamma, stack_order);
  ConservationReport<Scalar> report;
  report.law = law;
  report.s = curve.grid();
  report.values = fn(v).values();
  report.finalize();
  return report;
}

}  // namespace detail

/// Both triharmonic conservation constants c1 and c2 along the curve.
template <typename Scalar>
std::pair<ConservationReport<Scalar>, ConservationReport<Scalar>> conservation_triharmonic(
    const CircleAnsatzCurve<Scalar>& curve, Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  auto c1 = detail::ansatz_conservation(
      curve, ConservationLaw::TriC1, 2, 8,
      [](const auto& v) { return detail::tri_c1_field(v); }, n_eval);
  auto c2 = detail::ansatz_conservation(
      curve, ConservationLaw::TriC2, 3, 8,
      [](const auto& v) { return detail::tri_c2_field(v); }, n_eval);
  return {std::move(c1), std::move(c2)};
}

template <typename Scalar>
std::pair<ConservationReport<Scalar>, ConservationReport<Scalar>> conservation_triharmonic(
    const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  auto c1 = detail::grid_conservation(curve, ConservationLaw::TriC1, 2,
                                      [](const auto& v) { return detail::tri_c1_field(v); });
  auto c2 = detail::grid_conservation(curve, ConservationLaw::TriC2, 3,
                                      [](const auto& v) { return detail::tri_c2_field(v); });
  return {std::move(c1), std::move(c2)};
}

/// Integrated 4-harmonic conservation law (drift of the antiderivative F).
template <typename Scalar>
ConservationReport<Scalar> conservation_fourharmonic(const CircleAnsatzCurve<Scalar>& curve,
                                                     Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  return detail::ansatz_conservation(
      curve, ConservationLaw::FourLaw, 3, 10,
      [](const auto& v) { return detail::four_law_field(v); }, n_eval);
}

template <typename Scalar>
ConservationReport<Scalar> conservation_fourharmonic(const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  return detail::grid_conservation(curve, ConservationLaw::FourLaw, 3,
                                   [](const auto& v) { return detail::four_law_field(v); });
}

/// First triharmonic conservation law in Frenet form, evaluated on the
/// curvature family k1 = alpha / s, k2 = beta / s with exact derivatives:
///   (k1')^2 + 2 k1 k1'' - k1^4 - k1^2 k2^2.
/// Identically zero precisely when alpha^2 + beta^2 = 5.
template <typename Scalar>
ConservationReport<Scalar> conjecture_probe(Scalar alpha, Scalar beta, Scalar s_min,
                                            Scalar s_max, Eigen::Index n_eval = 256) {
  if (!(s_min > Scalar(0)) || !(s_max > s_min))
    throw InvalidArgument("probe range must satisfy 0 < s_min < s_max");
  ConservationReport<Scalar> report;
  report.law = ConservationLaw::TriC1;
  report.s.resize(n_eval);
  report.values.resize(n_eval);
  for (Eigen::Index i = 0; i < n_eval; ++i) {
    const Scalar s = s_min + (s_max - s_min) * Scalar(i) / Scalar(n_eval - 1);
    const Scalar k1 = alpha / s;
    const Scalar k1p = -alpha / (s * s);
    const Scalar k1pp = Scalar(2) * alpha / (s * s * s);
    const Scalar k2 = beta / s;
    report.s[i] = s;
    report.values[i] = k1p * k1p + Scalar(2) * k1 * k1pp - k1 * k1 * k1 * k1 - k1 * k1 * k2 * k2;
  }
  report.finalize();
  return report;
}

}  // namespace polycurve
