#pragma once

#include <vector>

#include "polycurve/circle_ansatz.hpp"
#include "polycurve/derivatives.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/field.hpp"
#include "polycurve/jet.hpp"
#include "polycurve/space_form.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

namespace detail {

template <typename Scalar>
void require_unit_speed(const CircleAnsatzCurve<Scalar>& curve) {
  if (!curve.is_unit_speed(Scalar(1e-8)))
    throw InvalidArgument("curve must be parametrized by arclength");
}

template <typename Scalar>
void require_unit_speed(const DiscreteCurve<Scalar>& curve) {
  const ScalarSamples<Scalar> speed = speed_samples(curve);
  using std::abs;
  for (Eigen::Index i = 0; i < speed.size(); ++i)
    if (abs(speed[i] - Scalar(1)) > Scalar(1e-4))
      throw InvalidArgument("curve must be parametrized by arclength (reparametrize first)");
}

}  // namespace detail

/// Pullback of the sphere's Levi-Civita derivative along the curve:
/// di(nabla_T X) = X' + <X, gamma'> gamma for X tangent to the sphere.
/// Works for both jet and grid field types.
template <typename Vec>
Vec sphere_covariant_derivative(const Vec& x, const Vec& gamma, const Vec& tangent) {
  return x.derivative(1) + dot(x, tangent) * gamma;
}

/// nabla_T^l T for l = 0..m through the embedding (so values[0] = gamma').
template <typename Vec>
std::vector<Vec> covariant_fields(const Vec& gamma, int m) {
  std::vector<Vec> v;
  v.reserve(m + 1);
  Vec tangent = gamma.derivative(1);
  v.push_back(tangent);
  for (int l = 0; l < m; ++l)
    v.push_back(sphere_covariant_derivative(v.back(), gamma, tangent));
  return v;
}

/// Sampled covariant stack: values[l] holds di(nabla_T^l T) row-wise.
template <typename Scalar>
struct CovariantStack {
  std::vector<SampleMatrix<Scalar>> values;
  ScalarSamples<Scalar> grid;
  Scalar window{};  // parameter length spanned by the grid

  int order() const { return static_cast<int>(values.size()) - 1; }
  const SampleMatrix<Scalar>& operator[](int l) const { return values[l]; }
};

using CovariantStackd = CovariantStack<double>;

/// Uniform evaluation grid for an ansatz curve: one fundamental period when
/// the frequencies are rationally related, otherwise one period of the
/// slowest term (the choice of window does not affect pointwise residuals).
template <typename Scalar>
std::pair<ScalarSamples<Scalar>, Scalar> default_grid(const CircleAnsatzCurve<Scalar>& curve,
                                                      Eigen::Index n) {
  Scalar window;
  if (auto period = fundamental_period(curve); period && *period <= Scalar(64))
    window = *period;
  else {
    Scalar fmin = curve.terms.front().frequency;
    for (const auto& t : curve.terms) fmin = std::min(fmin, t.frequency);
    window = Scalar(2) * Scalar(EIGEN_PI) / fmin;
  }
  ScalarSamples<Scalar> s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = window * Scalar(i) / Scalar(n);
  return {s, window};
}

/// Covariant stack of a sampled curve via Fourier differentiation.
template <typename Scalar>
CovariantStack<Scalar> covariant_stack(const DiscreteCurve<Scalar>& curve, int m) {
  if (m < 0) throw InvalidArgument("covariant order must be nonnegative");
  if (m > kMaxDerivativeOrder - 1)
    throw InvalidArgument("covariant order exceeds the supported derivative budget");
  detail::require_unit_speed(curve);
  GridVectorField<Scalar> gamma(curve.samples, curve.period);
  auto fields = covariant_fields(gamma, m);
  CovariantStack<Scalar> stack;
  stack.grid = curve.grid();
  stack.window = curve.period;
  stack.values.reserve(fields.size());
  for (auto& f : fields) stack.values.push_back(f.values());
  return stack;
}

/// Covariant stack of an ansatz curve by exact jet arithmetic at each grid
/// point.
template <typename Scalar>
CovariantStack<Scalar> covariant_stack(const CircleAnsatzCurve<Scalar>& curve, int m,
                                       Eigen::Index n_eval = 256) {
  if (m < 0) throw InvalidArgument("covariant order must be nonnegative");
  detail::require_unit_speed(curve);
  auto [grid, window] = default_grid(curve, n_eval);
  CovariantStack<Scalar> stack;
  stack.grid = grid;
  stack.window = window;
  stack.values.assign(m + 1, SampleMatrix<Scalar>(n_eval, curve.dim()));
  for (Eigen::Index i = 0; i < n_eval; ++i) {
    const VectorJet<Scalar> gamma = curve_jet(curve, grid[i], m + 1);
    auto fields = covariant_fields(gamma, m);
    for (int l = 0; l <= m; ++l) stack.values[l].row(i) = fields[l].value().transpose();
  }
  return stack;
}

/// Closed-form covariant powers of the one-frequency ansatz
/// gamma = cos(a s) e1 + sin(a s) e2 + e0:
///   di(nabla^{2l} T) = (-beta)^l gamma',
///   di(nabla^{2l+1} T) = (-beta)^l di(nabla_T T),
/// with beta = a^2 (1 - alpha^2). Exact for every order, so residuals of
/// arbitrary r stay within the derivative budget.
template <typename Scalar>
struct SingleFrequencyStack {
  Scalar frequency;   // a
  Scalar alpha_sq;    // alpha^2 = |e1|^2
  Scalar beta;        // a^2 (1 - alpha^2)

  explicit SingleFrequencyStack(const CircleAnsatzCurve<Scalar>& curve) {
    if (curve.terms.size() != 1)
      throw InvalidArgument("closed covariant recursion needs a single-frequency ansatz");
    frequency = curve.terms.front().frequency;
    alpha_sq = curve.terms.front().cos_axis.squaredNorm();
    beta = frequency * frequency * (Scalar(1) - alpha_sq);
  }

  /// Coefficient c and basis b of di(nabla^l T) = c * basis(l), where the
  /// basis is gamma' for even l and di(nabla_T T) for odd l.
  Scalar coefficient(int l) const {
    using std::pow;
    const int half = l / 2;
    return pow(-beta, Scalar(half));
  }
  bool uses_tension_basis(int l) const { return l % 2 == 1; }
};

}  // namespace polycurve
