#pragma once

#include <cmath>
#include <vector>

#include "polycurve/covariant.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/field.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

/// r-energy E_r = integral of |nabla_T^{r-1} T|^2 over one period, by the
/// rectangle rule (spectrally accurate on periodic data). Defined for any
/// parametrization; the printed equations assume arclength.
template <typename Scalar>
Scalar discrete_energy(const DiscreteCurve<Scalar>& curve, int r) {
  if (r < 1) throw InvalidArgument("energy order must be at least 1");
  if (r > 4) throw InvalidArgument("sampled curves support energies up to r = 4");
  GridVectorField<Scalar> gamma(curve.samples, curve.period);
  const auto v = covariant_fields(gamma, r - 1);
  const Scalar h = curve.period / Scalar(curve.sample_count());
  return h * v[r - 1].values().squaredNorm();
}

/// Same energy for a single-frequency ansatz through the closed recursion
/// L_r = a^{2r} alpha^2 (1 - alpha^2)^{r-1}, valid for every r >= 1 and any
/// (a, alpha), integrated over one fundamental period.
template <typename Scalar>
Scalar discrete_energy(const CircleAnsatzCurve<Scalar>& curve, int r) {
  if (r < 1) throw InvalidArgument("energy order must be at least 1");
  if (curve.terms.size() != 1)
    throw InvalidArgument("closed-form energy needs a single-frequency ansatz; sample the curve");
  using std::pow;
  const Scalar a = curve.terms.front().frequency;
  const Scalar alpha_sq = curve.terms.front().cos_axis.squaredNorm();
  const Scalar period = Scalar(2) * Scalar(EIGEN_PI) / a;
  return period * pow(a, Scalar(2 * r)) * alpha_sq * pow(Scalar(1) - alpha_sq, Scalar(r - 1));
}

/// Reduced Lagrangian of the one-frequency ansatz,
///   L_r(a, alpha) = a^{2r} alpha^2 (1 - alpha^2)^{r-1},
/// optionally with the frequency tied to the amplitude by the arclength
/// constraint a^2 alpha^2 = 1.
template <typename Scalar>
struct ReducedLagrangian {
  int r{2};
  bool constrained{true};

  Scalar operator()(Scalar alpha_sq) const {
    if (!constrained)
      throw InvalidArgument("unconstrained evaluation needs an explicit frequency");
    return evaluate(Scalar(1) / alpha_sq, alpha_sq);
  }
  Scalar operator()(Scalar a_sq, Scalar alpha_sq) const { return evaluate(a_sq, alpha_sq); }

 private:
  Scalar evaluate(Scalar a_sq, Scalar alpha_sq) const {
    using std::pow;
    return pow(a_sq, Scalar(r)) * alpha_sq * pow(Scalar(1) - alpha_sq, Scalar(r - 1));
  }
};

/// Critical amplitudes alpha^2 of the constrained one-parameter problem:
/// the proper branch 1/r, plus the geodesic branch 1 when r >= 3.
template <typename Scalar>
std::vector<Scalar> reduced_lagrangian_critical_points(int r) {
  if (r < 2) throw InvalidArgument("critical-point family starts at r = 2");
  std::vector<Scalar> out{Scalar(1) / Scalar(r)};
  if (r >= 3) out.push_back(Scalar(1));
  return out;
}

/// Closed-form second variation of the r-energy along the amplitude family,
/// evaluated at the critical point alpha^2 = 1/r, a^2 = r:
///   -4 |I| r^r (1 - alpha^2)^{r-2}.
/// Strictly negative: the circles are unstable critical points.
template <typename Scalar>
Scalar second_variation_reduced_closed_form(int r, Scalar interval_length) {
  if (r < 2) throw InvalidArgument("second variation defined for r >= 2");
  if (!(interval_length > Scalar(0))) throw InvalidArgument("interval length must be positive");
  using std::pow;
  const Scalar one_minus = Scalar(1) - Scalar(1) / Scalar(r);
  return Scalar(-4) * interval_length * pow(Scalar(r), Scalar(r)) *
         pow(one_minus, Scalar(r - 2));
}

/// Centered finite-difference d^2 E_r / d alpha^2 of the reduced energy at
/// the critical point (frequency held at a^2 = r, the admissible variation).
template <typename Scalar>
Scalar second_variation_reduced_fd(int r, Scalar interval_length, Scalar h = Scalar(1e-4)) {
  if (r < 2) throw InvalidArgument("second variation defined for r >= 2");
  using std::pow;
  using std::sqrt;
  const ReducedLagrangian<Scalar> lagrangian{r, false};
  const Scalar a_sq = Scalar(r);
  const Scalar alpha = sqrt(Scalar(1) / Scalar(r));
  auto energy = [&](Scalar al) { return interval_length * lagrangian(a_sq, al * al); };
  return (energy(alpha + h) - Scalar(2) * energy(alpha) + energy(alpha - h)) / (h * h);
}

/// Closed form with the finite-difference cross-check demanded alongside it;
/// throws when the two routes disagree by more than 1%.
template <typename Scalar>
Scalar second_variation_reduced(int r, Scalar interval_length) {
  const Scalar closed = second_variation_reduced_closed_form(r, interval_length);
  const Scalar fd = second_variation_reduced_fd(r, interval_length);
  using std::abs;
  if (abs(closed - fd) > Scalar(0.01) * abs(closed))
    throw NonConvergence("second-variation routes disagree beyond 1%");
  return closed;
}

}  // namespace polycurve
