#pragma once

#include <cmath>
#include <optional>

#include "polycurve/circle_ansatz.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

/// Closed curve on the unit sphere sampled uniformly in the parameter:
/// samples.row(i) = gamma(i * period / N). N must be even and >= 16 so the
/// Fourier differentiation engine applies.
template <typename Scalar>
struct DiscreteCurve {
  SampleMatrix<Scalar> samples;  // N x (n+1)
  Scalar period{};               // total parameter length L > 0

  Eigen::Index sample_count() const { return samples.rows(); }
  Eigen::Index dim() const { return samples.cols(); }
  Scalar spacing() const { return period / Scalar(sample_count()); }

  ScalarSamples<Scalar> grid() const {
    const Eigen::Index n = sample_count();
    ScalarSamples<Scalar> s(n);
    for (Eigen::Index i = 0; i < n; ++i) s[i] = period * Scalar(i) / Scalar(n);
    return s;
  }

  void validate() const {
    if (samples.cols() < 3) throw InvalidArgument("ambient dimension must be at least 3");
    if (!(period > Scalar(0))) throw InvalidArgument("period must be positive");
    if (samples.rows() < 16 || samples.rows() % 2 != 0)
      throw InvalidArgument("sample count must be even and at least 16");
    using std::abs;
    for (Eigen::Index i = 0; i < samples.rows(); ++i)
      if (abs(samples.row(i).squaredNorm() - Scalar(1)) > Scalar(2) * Scalar(kTolSphere))
        throw InvalidArgument("samples must lie on the unit sphere");
  }
};

using DiscreteCurved = DiscreteCurve<double>;

/// Project every sample back onto the unit sphere.
template <typename Scalar>
DiscreteCurve<Scalar> project_to_sphere(DiscreteCurve<Scalar> curve) {
  for (Eigen::Index i = 0; i < curve.samples.rows(); ++i)
    curve.samples.row(i).normalize();
  return curve;
}

/// Sample an ansatz curve over one fundamental period. Fails for irrationally
/// related frequencies, which have no common period.
template <typename Scalar>
DiscreteCurve<Scalar> sample(const CircleAnsatzCurve<Scalar>& curve, Eigen::Index n_samples) {
  const auto period = fundamental_period(curve);
  if (!period)
    throw InvalidArgument(
        "frequencies are not rationally related; the curve has no period to sample");
  if (n_samples < 16 || n_samples % 2 != 0)
    throw InvalidArgument("sample count must be even and at least 16");
  DiscreteCurve<Scalar> out;
  out.period = *period;
  out.samples.resize(n_samples, curve.dim());
  for (Eigen::Index i = 0; i < n_samples; ++i) {
    const Scalar s = *period * Scalar(i) / Scalar(n_samples);
    out.samples.row(i) = evaluate(curve, s).transpose();
  }
  return out;
}

}  // namespace polycurve
