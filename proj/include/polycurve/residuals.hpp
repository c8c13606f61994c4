#pragma once

#include <cmath>
#include <utility>

#include "polycurve/covariant.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/field.hpp"
#include "polycurve/jet.hpp"
#include "polycurve/space_form.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

enum class ResidualKind {
  IntrinsicR,
  ExtrinsicOdeR2,
  ExtrinsicOdeR3,
  ExtrinsicOdeR4,
  Geodesic,
  ExtrinsicPolyR,
};

inline const char* to_string(ResidualKind kind) {
  switch (kind) {
    case ResidualKind::IntrinsicR: return "intrinsic_r";
    case ResidualKind::ExtrinsicOdeR2: return "extrinsic_ode_r2";
    case ResidualKind::ExtrinsicOdeR3: return "extrinsic_ode_r3";
    case ResidualKind::ExtrinsicOdeR4: return "extrinsic_ode_r4";
    case ResidualKind::Geodesic: return "geodesic";
    case ResidualKind::ExtrinsicPolyR: return "extrinsic_poly_r";
  }
  return "unknown";
}

/// Pointwise norms and aggregates of an r-harmonicity residual.
template <typename Scalar>
struct ResidualReport {
  ResidualKind kind{};
  int r{};
  ScalarSamples<Scalar> s;
  ScalarSamples<Scalar> per_sample;
  Scalar max_norm{};
  Scalar l2_norm{};
  ScalarSamples<Scalar> lambda_estimate;  // empty when not applicable

  void finalize(Scalar window) {
    max_norm = per_sample.size() ? per_sample.maxCoeff() : Scalar(0);
    const Scalar h = window / Scalar(per_sample.size());
    l2_norm = std::sqrt(h * per_sample.squaredNorm());
  }
};

using ResidualReportd = ResidualReport<double>;

namespace detail {

// The residual expressions below are written once against the shared
// jet/grid-field surface, so the analytic and spectral pipelines evaluate
// the same formulas.

/// gamma'' + |gamma'|^2 gamma
template <typename Vec>
Vec geodesic_ode_field(const Vec& gamma) {
  const Vec g1 = gamma.derivative(1);
  return gamma.derivative(2) + dot(g1, g1) * gamma;
}

/// gamma^(4) + 2 gamma'' + (2 - |gamma''|^2) gamma
template <typename Vec>
Vec biharmonic_ode_field(const Vec& gamma) {
  using S = typename Vec::ScalarType;
  const Vec g2 = gamma.derivative(2);
  return gamma.derivative(4) + S(2) * g2 + (S(2) - dot(g2, g2)) * gamma;
}

template <typename Vec>
auto biharmonic_lambda_field(const Vec& gamma) {
  using S = typename Vec::ScalarType;
  const Vec g2 = gamma.derivative(2);
  return S(2) - dot(g2, g2);
}

/// gamma^(6) + 2 gamma^(4) + 3 gamma'' - 2 gamma''|gamma''|^2
/// - 2 gamma' (|gamma''|^2)' - gamma (9/2 (|gamma''|^2)'' - |gamma'''|^2 - 3 + 4|gamma''|^2)
template <typename Vec>
Vec triharmonic_ode_field(const Vec& gamma) {
  using S = typename Vec::ScalarType;
  const Vec g1 = gamma.derivative(1);
  const Vec g2 = gamma.derivative(2);
  const Vec g3 = gamma.derivative(3);
  const auto nsq = dot(g2, g2);
  const auto proj = S(4.5) * nsq.derivative(2) - dot(g3, g3) - S(3) + S(4) * nsq;
  return gamma.derivative(6) + S(2) * gamma.derivative(4) + S(3) * g2 - S(2) * (nsq * g2) -
         S(2) * (nsq.derivative(1) * g1) - proj * gamma;
}

template <typename Vec>
auto triharmonic_lambda_field(const Vec& gamma) {
  using S = typename Vec::ScalarType;
  const Vec g2 = gamma.derivative(2);
  const Vec g3 = gamma.derivative(3);
  const auto nsq = dot(g2, g2);
  return S(4.5) * nsq.derivative(2) - dot(g3, g3) - S(3) + S(4) * nsq;
}

/// Full 8th-order equation for 4-harmonic curves, including the gamma
/// projection blocks that eliminate the multiplier.
template <typename Vec>
Vec fourharmonic_ode_field(const Vec& gamma) {
  using S = typename Vec::ScalarType;
  const Vec g1 = gamma.derivative(1);
  const Vec g2 = gamma.derivative(2);
  const Vec g4 = gamma.derivative(4);
  const Vec g6 = gamma.derivative(6);
  const Vec g8 = gamma.derivative(8);
  const auto nsq = dot(g2, g2);   // |gamma''|^2
  const auto p42 = dot(g4, g2);   // <gamma^(4), gamma''>
  const auto p41 = dot(g4, g1);   // <gamma^(4), gamma'>

  const Vec dd_tangent = (p41 * g1).derivative(2);   // d^2/ds^2 (gamma' <g4,g1>)
  const Vec d4_radial = (nsq * gamma).derivative(4); // d^4/ds^4 (|g2|^2 gamma)
  const Vec d_normal = (p41 * g2).derivative(1);     // d/ds (gamma'' <g4,g1>)

  const Vec body = g8 + S(2) * g6 + S(3) * g4 - nsq * g4 - S(6) * (nsq * g2) + S(4) * g2 -
                   S(2) * (p42 * g2) + S(5) * dd_tangent - d4_radial -
                   S(6) * (nsq.derivative(1) * g1) - S(2) * (p42.derivative(1) * g1) -
                   S(5) * d_normal;

  const auto block_plain = dot(g8, gamma) + S(2) * dot(g6, gamma) + S(3) * dot(g4, gamma) -
                           dot(g4, gamma) * nsq + S(6) * nsq - S(4) + S(2) * p42;
  const auto block_composite =
      S(5) * dot(gamma, dd_tangent) - dot(gamma, d4_radial) - S(5) * dot(gamma, d_normal);

  return body - (block_plain + block_composite) * gamma;
}

/// gamma^(2r) - <gamma^(2r), gamma> gamma
template <typename Vec>
Vec extrinsic_field(const Vec& gamma, int r) {
  const Vec g2r = gamma.derivative(2 * r);
  return g2r - dot(g2r, gamma) * gamma;
}

/// tau_r on the unit sphere through the embedded covariant stack.
template <typename Vec>
Vec intrinsic_field(const Vec& gamma, int r) {
  using S = typename Vec::ScalarType;
  const auto v = covariant_fields(gamma, 2 * r - 1);
  const Vec& t = v[0];
  Vec acc = v[2 * r - 1];
  for (int l = 0; l <= r - 2; ++l) {
    const S sign = (l % 2 == 0) ? S(1) : S(-1);
    acc = acc + sign * (dot(t, v[l]) * v[2 * r - 3 - l] - dot(t, v[2 * r - 3 - l]) * v[l]);
  }
  return acc;
}

/// Evaluate a jet-expression residual over the default grid of an ansatz
/// curve. with_lambda selects the optional multiplier diagnostic.
template <typename Scalar, typename FieldFn, typename LambdaFn>
ResidualReport<Scalar> ansatz_residual(const CircleAnsatzCurve<Scalar>& curve,
                                       ResidualKind kind, int r, int jet_order,
                                       FieldFn&& field_fn, bool with_lambda,
                                       LambdaFn&& lambda_fn, Eigen::Index n_eval) {
  auto [grid, window] = default_grid(curve, n_eval);
  ResidualReport<Scalar> report;
  report.kind = kind;
  report.r = r;
  report.s = grid;
  report.per_sample.resize(grid.size());
  if (with_lambda) report.lambda_estimate.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const VectorJet<Scalar> gamma = curve_jet(curve, grid[i], jet_order);
    report.per_sample[i] = field_fn(gamma).value().norm();
    if (with_lambda) report.lambda_estimate[i] = lambda_fn(gamma).value();
  }
  report.finalize(window);
  return report;
}

/// Evaluate a grid-expression residual on the curve's own grid.
template <typename Scalar, typename FieldFn, typename LambdaFn>
ResidualReport<Scalar> grid_residual(const DiscreteCurve<Scalar>& curve, ResidualKind kind,
                                     int r, FieldFn&& field_fn, bool with_lambda,
                                     LambdaFn&& lambda_fn) {
  GridVectorField<Scalar> gamma(curve.samples, curve.period);
  ResidualReport<Scalar> report;
  report.kind = kind;
  report.r = r;
  report.s = curve.grid();
  report.per_sample = field_fn(gamma).values().rowwise().norm();
  if (with_lambda) report.lambda_estimate = lambda_fn(gamma).values();
  report.finalize(curve.period);
  return report;
}

constexpr auto kNoLambda = [](const auto& gamma) { return dot(gamma, gamma); };

}  // namespace detail

// ---------------------------------------------------------------------------
// Dedicated ODE residuals
// ---------------------------------------------------------------------------

template <typename Scalar>
ResidualReport<Scalar> residual_geodesic(const CircleAnsatzCurve<Scalar>& curve,
                                         Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  return detail::ansatz_residual(
      curve, ResidualKind::Geodesic, 1, 2,
      [](const auto& g) { return detail::geodesic_ode_field(g); }, false, detail::kNoLambda,
      n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_geodesic(const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::Geodesic, 1,
      [](const auto& g) { return detail::geodesic_ode_field(g); }, false, detail::kNoLambda);
}

template <typename Scalar>
ResidualReport<Scalar> residual_biharmonic_ode(const CircleAnsatzCurve<Scalar>& curve,
                                               Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  return detail::ansatz_residual(
      curve, ResidualKind::ExtrinsicOdeR2, 2, 4,
      [](const auto& g) { return detail::biharmonic_ode_field(g); }, true,
      [](const auto& g) { return detail::biharmonic_lambda_field(g); }, n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_biharmonic_ode(const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::ExtrinsicOdeR2, 2,
      [](const auto& g) { return detail::biharmonic_ode_field(g); }, true,
      [](const auto& g) { return detail::biharmonic_lambda_field(g); });
}

template <typename Scalar>
ResidualReport<Scalar> residual_triharmonic_ode(const CircleAnsatzCurve<Scalar>& curve,
                                                Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  return detail::ansatz_residual(
      curve, ResidualKind::ExtrinsicOdeR3, 3, 8,
      [](const auto& g) { return detail::triharmonic_ode_field(g); }, true,
      [](const auto& g) { return detail::triharmonic_lambda_field(g); }, n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_triharmonic_ode(const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::ExtrinsicOdeR3, 3,
      [](const auto& g) { return detail::triharmonic_ode_field(g); }, true,
      [](const auto& g) { return detail::triharmonic_lambda_field(g); });
}

template <typename Scalar>
ResidualReport<Scalar> residual_fourharmonic_ode(const CircleAnsatzCurve<Scalar>& curve,
                                                 Eigen::Index n_eval = 256) {
  detail::require_unit_speed(curve);
  return detail::ansatz_residual(
      curve, ResidualKind::ExtrinsicOdeR4, 4, 12,
      [](const auto& g) { return detail::fourharmonic_ode_field(g); }, false,
      detail::kNoLambda, n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_fourharmonic_ode(const DiscreteCurve<Scalar>& curve) {
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::ExtrinsicOdeR4, 4,
      [](const auto& g) { return detail::fourharmonic_ode_field(g); }, false,
      detail::kNoLambda);
}

template <typename Scalar>
ResidualReport<Scalar> residual_extrinsic(const CircleAnsatzCurve<Scalar>& curve, int r,
                                          Eigen::Index n_eval = 256) {
  if (r < 2) throw InvalidArgument("extrinsic residual defined for r >= 2");
  if (2 * r > kMaxDerivativeOrder)
    throw InvalidArgument("extrinsic residual exceeds the derivative budget");
  detail::require_unit_speed(curve);
  return detail::ansatz_residual(
      curve, ResidualKind::ExtrinsicPolyR, r, 2 * r,
      [r](const auto& g) { return detail::extrinsic_field(g, r); }, false, detail::kNoLambda,
      n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_extrinsic(const DiscreteCurve<Scalar>& curve, int r) {
  if (r < 2) throw InvalidArgument("extrinsic residual defined for r >= 2");
  if (2 * r > kMaxDerivativeOrder)
    throw InvalidArgument("extrinsic residual exceeds the derivative budget");
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::ExtrinsicPolyR, r,
      [r](const auto& g) { return detail::extrinsic_field(g, r); }, false, detail::kNoLambda);
}

// ---------------------------------------------------------------------------
// Intrinsic residual tau_r
// ---------------------------------------------------------------------------

/// tau_r of an ansatz curve. Single-frequency curves go through the closed
/// covariant recursion (exact, any r >= 2); multi-frequency curves use jet
/// covariant stacks and are limited by the derivative budget to r <= 4.
template <typename Scalar>
ResidualReport<Scalar> residual_intrinsic(
    const CircleAnsatzCurve<Scalar>& curve, int r,
    const SpaceForm<Scalar>& space = SpaceForm<Scalar>::unit_sphere(),
    Eigen::Index n_eval = 256) {
  if (r < 2) throw InvalidArgument("intrinsic residual defined for r >= 2 (use the geodesic residual)");
  space.require_unit_sphere("residual_intrinsic on an embedded curve");
  detail::require_unit_speed(curve);

  if (curve.terms.size() == 1) {
    // tau_r = (-beta)^{r-2} (r - 1 - beta) * di(nabla_T T) with beta = a^2 - 1.
    const SingleFrequencyStack<Scalar> stack(curve);
    using std::pow;
    const Scalar coef =
        pow(-stack.beta, Scalar(r - 2)) * (Scalar(r - 1) - stack.beta);
    auto [grid, window] = default_grid(curve, n_eval);
    ResidualReport<Scalar> report;
    report.kind = ResidualKind::IntrinsicR;
    report.r = r;
    report.s = grid;
    report.per_sample.resize(grid.size());
    const Scalar aa = stack.frequency * stack.frequency * stack.alpha_sq;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const AmbientVector<Scalar> v1 =
          derivative(curve, grid[i], 2) + aa * evaluate(curve, grid[i]);
      report.per_sample[i] = std::abs(coef) * v1.norm();
    }
    report.finalize(window);
    return report;
  }

  if (r > 4) throw InvalidArgument("intrinsic residual beyond r = 4 needs a single-frequency ansatz");
  return detail::ansatz_residual(
      curve, ResidualKind::IntrinsicR, r, 2 * r + 1,
      [r](const auto& g) { return detail::intrinsic_field(g, r); }, false, detail::kNoLambda,
      n_eval);
}

template <typename Scalar>
ResidualReport<Scalar> residual_intrinsic(
    const DiscreteCurve<Scalar>& curve, int r,
    const SpaceForm<Scalar>& space = SpaceForm<Scalar>::unit_sphere()) {
  if (r < 2) throw InvalidArgument("intrinsic residual defined for r >= 2 (use the geodesic residual)");
  if (r > 4) throw InvalidArgument("intrinsic residual on sampled curves supports r <= 4");
  space.require_unit_sphere("residual_intrinsic on an embedded curve");
  detail::require_unit_speed(curve);
  return detail::grid_residual(
      curve, ResidualKind::IntrinsicR, r,
      [r](const auto& g) { return detail::intrinsic_field(g, r); }, false, detail::kNoLambda);
}

}  // namespace polycurve
