#pragma once

#include "polycurve/circle_ansatz.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/spectral.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

/// gamma, gamma', ..., gamma^(m) at a single parameter value, by closed-form
/// differentiation of the trigonometric terms.
template <typename Scalar>
DerivativeStack<Scalar> derivatives_analytic(const CircleAnsatzCurve<Scalar>& curve, Scalar s,
                                             int m) {
  if (m < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (m > kMaxDerivativeOrder)
    throw InvalidArgument("derivative order exceeds the supported maximum");
  DerivativeStack<Scalar> stack;
  stack.values.reserve(m + 1);
  for (int l = 0; l <= m; ++l) {
    SampleMatrix<Scalar> row(1, curve.dim());
    row.row(0) = derivative(curve, s, l).transpose();
    stack.values.push_back(std::move(row));
  }
  return stack;
}

/// Same, over an explicit grid of parameter values.
template <typename Scalar>
DerivativeStack<Scalar> derivatives_analytic(const CircleAnsatzCurve<Scalar>& curve,
                                             const ScalarSamples<Scalar>& grid, int m) {
  if (m < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (m > kMaxDerivativeOrder)
    throw InvalidArgument("derivative order exceeds the supported maximum");
  DerivativeStack<Scalar> stack;
  stack.values.reserve(m + 1);
  for (int l = 0; l <= m; ++l) {
    SampleMatrix<Scalar> block(grid.size(), curve.dim());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      block.row(i) = derivative(curve, grid[i], l).transpose();
    stack.values.push_back(std::move(block));
  }
  return stack;
}

/// gamma, gamma', ..., gamma^(m) on the curve's grid by Fourier
/// differentiation; exact for band-limited curves.
template <typename Scalar>
DerivativeStack<Scalar> derivatives_spectral(const DiscreteCurve<Scalar>& curve, int m) {
  if (m < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (m > kMaxDerivativeOrder)
    throw InvalidArgument("derivative order exceeds the supported maximum");
  if (curve.sample_count() % 2 != 0)
    throw InvalidArgument("spectral differentiation needs an even sample count");
  DerivativeStack<Scalar> stack;
  stack.values.reserve(m + 1);
  stack.values.push_back(curve.samples);
  for (int l = 1; l <= m; ++l)
    stack.values.push_back(fourier_derivative(curve.samples, curve.period, l));
  return stack;
}

/// Pointwise speed |gamma'| on the grid.
template <typename Scalar>
ScalarSamples<Scalar> speed_samples(const DiscreteCurve<Scalar>& curve) {
  const SampleMatrix<Scalar> d1 = fourier_derivative(curve.samples, curve.period, 1);
  return d1.rowwise().norm();
}

}  // namespace polycurve
