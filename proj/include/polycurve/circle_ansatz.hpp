#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "polycurve/errors.hpp"
#include "polycurve/jet.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

/// One oscillating pair cos(a s) e_cos + sin(a s) e_sin of the ansatz.
template <typename Scalar>
struct CircleTerm {
  Scalar frequency{};                // a > 0
  AmbientVector<Scalar> cos_axis;    // e_cos
  AmbientVector<Scalar> sin_axis;    // e_sin, |e_sin| = |e_cos|
};

/// Sum-of-circles curve on the unit sphere,
///   gamma(s) = sum_j [cos(a_j s) e_cos_j + sin(a_j s) e_sin_j] + e_0,
/// with all axis vectors mutually orthogonal, per-term equal norms alpha_j,
/// sum_j alpha_j^2 + |e_0|^2 = 1 and pairwise distinct frequencies.
template <typename Scalar>
struct CircleAnsatzCurve {
  std::vector<CircleTerm<Scalar>> terms;
  AmbientVector<Scalar> constant_axis;  // e_0 (may be zero)

  Eigen::Index dim() const { return constant_axis.size(); }

  Scalar max_frequency() const {
    Scalar m(0);
    for (const auto& t : terms) m = std::max(m, t.frequency);
    return m;
  }

  /// |gamma'|^2 = sum_j a_j^2 alpha_j^2; equals 1 for unit-speed curves.
  Scalar speed_squared() const {
    Scalar v(0);
    for (const auto& t : terms) v += t.frequency * t.frequency * t.cos_axis.squaredNorm();
    return v;
  }

  bool is_unit_speed(Scalar tol = Scalar(kTolSphere)) const {
    using std::abs;
    return abs(speed_squared() - Scalar(1)) <= tol;
  }

  void validate() const {
    if (constant_axis.size() < 3)
      throw InvalidArgument("ambient dimension must be at least 3");
    if (terms.empty()) throw InvalidArgument("ansatz needs at least one circle term");
    Scalar total = constant_axis.squaredNorm();
    std::vector<const AmbientVector<Scalar>*> axes{&constant_axis};
    for (const auto& t : terms) {
      if (!(t.frequency > Scalar(0))) throw InvalidArgument("frequencies must be positive");
      if (t.cos_axis.size() != constant_axis.size() ||
          t.sin_axis.size() != constant_axis.size())
        throw InvalidArgument("axis dimensions disagree");
      using std::abs;
      if (abs(t.cos_axis.squaredNorm() - t.sin_axis.squaredNorm()) > Scalar(kTolSphere))
        throw InvalidArgument("cos/sin axes of a term must have equal norms");
      total += t.cos_axis.squaredNorm();
      axes.push_back(&t.cos_axis);
      axes.push_back(&t.sin_axis);
    }
    using std::abs;
    if (abs(total - Scalar(1)) > Scalar(kTolSphere))
      throw InvalidArgument("axis norms must sum to 1 so the curve lies on the sphere");
    for (size_t i = 0; i < axes.size(); ++i)
      for (size_t j = i + 1; j < axes.size(); ++j)
        if (abs(axes[i]->dot(*axes[j])) > Scalar(kTolSphere))
          throw InvalidArgument("axis vectors must be mutually orthogonal");
    for (size_t i = 0; i < terms.size(); ++i)
      for (size_t j = i + 1; j < terms.size(); ++j)
        if (abs(terms[i].frequency - terms[j].frequency) <= Scalar(kTolSphere))
          throw InvalidArgument("frequencies must be pairwise distinct");
  }
};

using CircleAnsatzCurved = CircleAnsatzCurve<double>;

/// gamma(s).
template <typename Scalar>
AmbientVector<Scalar> evaluate(const CircleAnsatzCurve<Scalar>& curve, Scalar s) {
  AmbientVector<Scalar> v = curve.constant_axis;
  for (const auto& t : curve.terms) {
    using std::cos;
    using std::sin;
    v += cos(t.frequency * s) * t.cos_axis + sin(t.frequency * s) * t.sin_axis;
  }
  return v;
}

/// Exact l-th derivative gamma^(l)(s): each derivative rotates the
/// (cos_axis, sin_axis) pair by a quarter phase and scales by the frequency.
template <typename Scalar>
AmbientVector<Scalar> derivative(const CircleAnsatzCurve<Scalar>& curve, Scalar s, int l) {
  if (l < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (l == 0) return evaluate(curve, s);
  AmbientVector<Scalar> v = AmbientVector<Scalar>::Zero(curve.dim());
  for (const auto& t : curve.terms) {
    using std::cos;
    using std::pow;
    using std::sin;
    const Scalar scale = pow(t.frequency, Scalar(l));
    const AmbientVector<Scalar>* c = &t.cos_axis;
    const AmbientVector<Scalar>* d = &t.sin_axis;
    Scalar sign_c(1), sign_d(1);
    switch (l % 4) {  // (c, d) -> (d, -c) per derivative
      case 0: break;
      case 1: std::swap(c, d); sign_d = Scalar(-1); break;
      case 2: sign_c = Scalar(-1); sign_d = Scalar(-1); break;
      case 3: std::swap(c, d); sign_c = Scalar(-1); break;
    }
    v += scale * (sign_c * cos(t.frequency * s) * (*c) + sign_d * sin(t.frequency * s) * (*d));
  }
  return v;
}

/// Jet of gamma at s, exact to the requested order.
template <typename Scalar>
VectorJet<Scalar> curve_jet(const CircleAnsatzCurve<Scalar>& curve, Scalar s, int order) {
  VectorJet<Scalar> jet(order, curve.dim());
  for (int l = 0; l <= order; ++l) jet.set_deriv(l, derivative(curve, s, l));
  return jet;
}

/// Least common period of the ansatz, when the frequency ratios are rational
/// (continued-fraction reconstruction with denominators up to max_denominator).
/// Returns nullopt for irrationally related frequencies; such curves are
/// evaluated analytically only.
template <typename Scalar>
std::optional<Scalar> fundamental_period(const CircleAnsatzCurve<Scalar>& curve,
                                         long max_denominator = 512,
                                         Scalar tol = Scalar(1e-9)) {
  const Scalar base = curve.terms.front().frequency;
  long lcm_q = 1;
  for (const auto& t : curve.terms) {
    const Scalar ratio = t.frequency / base;
    // continued fraction convergents h/k of the ratio
    long h_old = 0, h = 1, k_old = 1, k = 0;
    Scalar x = ratio;
    bool found = false;
    long denominator = 0;
    for (int it = 0; it < 64; ++it) {
      using std::abs;
      using std::floor;
      const Scalar a = floor(x);
      const long ai = static_cast<long>(a);
      const long h_new = ai * h + h_old;
      const long k_new = ai * k + k_old;
      h_old = h; k_old = k; h = h_new; k = k_new;
      if (k > max_denominator) break;
      if (k > 0 && abs(ratio - Scalar(h) / Scalar(k)) <= tol * abs(ratio)) {
        found = true;
        denominator = k;
        break;
      }
      const Scalar frac = x - a;
      if (abs(frac) < Scalar(1e-15)) break;
      x = Scalar(1) / frac;
    }
    if (!found) return std::nullopt;
    lcm_q = std::lcm(lcm_q, denominator);
  }
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  return two_pi * Scalar(lcm_q) / base;
}

}  // namespace polycurve
