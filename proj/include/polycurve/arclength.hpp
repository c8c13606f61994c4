#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polycurve/derivatives.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/spectral.hpp"

namespace polycurve {

namespace detail {

/// Monotone cubic Hermite interpolation (Fritsch-Carlson slopes) through
/// (x_i, y_i); x strictly increasing. Used to invert cumulative length.
template <typename Scalar>
class MonotoneSpline {
 public:
  MonotoneSpline(std::vector<Scalar> x, std::vector<Scalar> y)
      : x_(std::move(x)), y_(std::move(y)), slope_(x_.size()) {
    const size_t n = x_.size();
    std::vector<Scalar> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i)
      slope_[i] = (d[i - 1] * d[i] > Scalar(0))
                      ? Scalar(2) * d[i - 1] * d[i] / (d[i - 1] + d[i])
                      : Scalar(0);
  }

  Scalar operator()(Scalar x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    size_t i = it == x_.begin() ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const Scalar h = x_[i + 1] - x_[i];
    const Scalar t = (x - x_[i]) / h;
    const Scalar t2 = t * t, t3 = t2 * t;
    return y_[i] * (2 * t3 - 3 * t2 + 1) + h * slope_[i] * (t3 - 2 * t2 + t) +
           y_[i + 1] * (-2 * t3 + 3 * t2) + h * slope_[i + 1] * (t3 - t2);
  }

 private:
  std::vector<Scalar> x_, y_, slope_;
};

}  // namespace detail

/// Resample a closed curve uniformly in arclength. Length is accumulated from
/// chords of a spectrally upsampled copy and inverted with a monotone cubic
/// spline; a Newton polish on the spectral cumulative length sharpens each
/// node to the resolution limit, and the output is re-projected onto the
/// sphere. The new period is the measured total length.
template <typename Scalar>
DiscreteCurve<Scalar> arclength_reparametrize(const DiscreteCurve<Scalar>& curve,
                                              Eigen::Index upsample_factor = 32) {
  const Eigen::Index n = curve.sample_count();
  const ScalarSamples<Scalar> speed = speed_samples(curve);
  const Scalar max_speed = speed.maxCoeff();
  if (!(speed.minCoeff() > Scalar(1e-8) * std::max(Scalar(1), max_speed)))
    throw InvalidArgument("curve has a vanishing tangent sample");

  const Eigen::Index m = n * upsample_factor;
  const SampleMatrix<Scalar> fine = fourier_resample(curve.samples, m);

  // cumulative chord length over the closed fine polygon
  std::vector<Scalar> s_grid(m + 1), length(m + 1);
  s_grid[0] = Scalar(0);
  length[0] = Scalar(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = (i + 1) % m;
    const Scalar chord = (fine.row(j) - fine.row(i)).norm();
    s_grid[i + 1] = curve.period * Scalar(i + 1) / Scalar(m);
    length[i + 1] = length[i] + chord;
  }

  // spectral cumulative length for the polish: integral of the speed as the
  // mean ramp plus a periodic zero-mean part evaluated by interpolation
  const ScalarSamples<Scalar> arc = fourier_antiderivative<Scalar>(speed, curve.period);
  const Scalar mean_speed = speed.mean();
  SampleMatrix<Scalar> wiggle(n, 1), speed_col(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar s = curve.period * Scalar(i) / Scalar(n);
    wiggle(i, 0) = arc[i] - mean_speed * s;
    speed_col(i, 0) = speed[i];
  }
  const TrigInterpolant<Scalar> wiggle_interp(wiggle, curve.period);
  const TrigInterpolant<Scalar> speed_interp(speed_col, curve.period);
  auto arc_at = [&](Scalar s) { return wiggle_interp(s)[0] + mean_speed * s; };
  const Scalar total = mean_speed * curve.period;

  detail::MonotoneSpline<Scalar> inverse(length, s_grid);
  const TrigInterpolant<Scalar> interp(curve.samples, curve.period);

  DiscreteCurve<Scalar> out;
  out.period = total;
  out.samples.resize(n, curve.dim());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar target = total * Scalar(k) / Scalar(n);
    Scalar s = inverse(target * length[m] / total);
    for (int polish = 0; polish < 3; ++polish)
      s -= (arc_at(s) - target) / speed_interp(s)[0];
    AmbientVector<Scalar> p = interp(s);
    p.normalize();
    out.samples.row(k) = p.transpose();
  }
  return out;
}

}  // namespace polycurve
