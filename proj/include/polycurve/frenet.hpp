#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "polycurve/covariant.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/space_form.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

/// Coefficients of nabla_T^l T in the Frenet frame {T, F2, F3} of a
/// constant-(k, tau) curve in a 3-dimensional space form:
///   l = 2m:     (-1)^m k^2 (k^2+tau^2)^{m-1} T + (-1)^{m+1} k tau (k^2+tau^2)^{m-1} F3
///   l = 2m + 1: (-1)^m k (k^2+tau^2)^m F2
template <typename Scalar>
struct FrenetCoefficients {
  Scalar c_tangent{};
  Scalar c_normal{};
  Scalar c_binormal{};
};

template <typename Scalar>
FrenetCoefficients<Scalar> iterated_frenet(Scalar k, Scalar tau, int l) {
  if (l < 2) throw InvalidArgument("iterated Frenet formulas start at order 2");
  using std::pow;
  const Scalar c2 = k * k + tau * tau;
  FrenetCoefficients<Scalar> out;
  if (l % 2 == 0) {
    const int m = l / 2;
    const Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
    out.c_tangent = sign * k * k * pow(c2, Scalar(m - 1));
    out.c_binormal = -sign * k * tau * pow(c2, Scalar(m - 1));
  } else {
    const int m = (l - 1) / 2;
    const Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
    out.c_normal = sign * k * pow(c2, Scalar(m));
  }
  return out;
}

/// F2-coefficient of the order-r tension of a constant-(k, tau) arclength
/// curve in a space form of curvature K:
///   tau_r = (-1)^{r-1} k (k^2+tau^2)^{r-3} [ (k^2+tau^2)^2 - K((r-1)k^2 + tau^2) ] F2.
/// Vanishes exactly on the curvature-torsion relation.
template <typename Scalar>
Scalar tension_frenet_coefficient(Scalar K, int r, Scalar k, Scalar tau) {
  if (r < 2) throw InvalidArgument("tension coefficient defined for r >= 2");
  using std::pow;
  const Scalar c2 = k * k + tau * tau;
  if (c2 == Scalar(0)) return Scalar(0);
  const Scalar sign = (r % 2 == 0) ? Scalar(-1) : Scalar(1);
  return sign * k * pow(c2, Scalar(r - 3)) *
         (c2 * c2 - K * (Scalar(r - 1) * k * k + tau * tau));
}

/// Geodesic curvature, torsion and the orthonormal frame {T, F2, F3} along a
/// curve, sample-wise. Torsion is reported nonnegative: F3 is the normalized
/// direction of nabla_T F2 + k T, so tau = |nabla_T F2 + k T|.
template <typename Scalar>
struct FrenetData {
  ScalarSamples<Scalar> s;
  ScalarSamples<Scalar> k;
  ScalarSamples<Scalar> tau;
  Eigen::Array<bool, Eigen::Dynamic, 1> torsion_defined;
  SampleMatrix<Scalar> tangent;
  SampleMatrix<Scalar> normal;
  SampleMatrix<Scalar> binormal;
  bool normal_defined{false};
  bool binormal_defined{false};
  bool torsion_globally_defined{false};
  Scalar max_frame_orthonormality_error{0};
  Scalar max_frenet_residual{0};

  Eigen::Index sample_count() const { return k.size(); }

  /// Torsion for callers that cannot work with the flagged-undefined channel.
  const ScalarSamples<Scalar>& torsion_or_throw() const {
    if (!torsion_globally_defined)
      throw UndefinedTorsion("torsion is undefined where the curvature vanishes");
    return tau;
  }
};

using FrenetDatad = FrenetData<double>;

namespace detail {

/// Generalized cross product in a 4-dimensional space: the unique (up to
/// sign) direction orthogonal to u, v, w.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> cross4(const Eigen::Matrix<Scalar, 4, 1>& u,
                                   const Eigen::Matrix<Scalar, 4, 1>& v,
                                   const Eigen::Matrix<Scalar, 4, 1>& w) {
  Eigen::Matrix<Scalar, 4, 1> x;
  Eigen::Matrix<Scalar, 3, 3> minor;
  for (int i = 0; i < 4; ++i) {
    int c = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      minor(0, c) = u[j];
      minor(1, c) = v[j];
      minor(2, c) = w[j];
      ++c;
    }
    x[i] = (i % 2 == 0 ? Scalar(1) : Scalar(-1)) * minor.determinant();
  }
  return x;
}

/// Orthonormal basis of the subspace spanned by the rows of the stacked
/// blocks, with the numerical rank at the given relative threshold.
template <typename Scalar>
std::pair<SampleMatrix<Scalar>, int> row_span_basis(
    const std::vector<const SampleMatrix<Scalar>*>& blocks, Scalar rel_tol) {
  Eigen::Index rows = 0;
  for (auto* b : blocks) rows += b->rows();
  SampleMatrix<Scalar> stacked(rows, blocks.front()->cols());
  Eigen::Index at = 0;
  for (auto* b : blocks) {
    stacked.middleRows(at, b->rows()) = *b;
    at += b->rows();
  }
  Eigen::JacobiSVD<SampleMatrix<Scalar>> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++rank;
  return {svd.matrixV().leftCols(rank), rank};
}

/// Shared frame assembly once gamma, T = gamma', V1 = di(nabla_T T) and
/// W = di(nabla_T F2) are known on the grid. The W block may be empty when
/// the curvature vanishes somewhere (torsion is then left undefined).
template <typename Scalar>
FrenetData<Scalar> assemble_frenet(const ScalarSamples<Scalar>& grid,
                                   const SampleMatrix<Scalar>& gamma,
                                   const SampleMatrix<Scalar>& tangent,
                                   const SampleMatrix<Scalar>& v1,
                                   const SampleMatrix<Scalar>& w, bool have_w) {
  const Eigen::Index n = gamma.rows();
  std::vector<const SampleMatrix<Scalar>*> blocks{&gamma, &tangent, &v1};
  auto [basis, rank] = row_span_basis<Scalar>(blocks, Scalar(1e-8));
  if (rank > 4) throw InvalidArgument("curve does not lie in a 3-dimensional space form");

  FrenetData<Scalar> out;
  out.s = grid;
  out.tangent = tangent;
  out.k = v1.rowwise().norm();
  out.tau = ScalarSamples<Scalar>::Zero(n);
  out.torsion_defined = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, false);
  out.normal = SampleMatrix<Scalar>::Zero(n, gamma.cols());
  out.binormal = SampleMatrix<Scalar>::Zero(n, gamma.cols());

  Eigen::Index undefined = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.k[i] > Scalar(kTolFrenet))
      out.normal.row(i) = v1.row(i) / out.k[i];
    else {
      out.k[i] = Scalar(0);
      ++undefined;
    }
  }
  if (undefined == n) return out;  // geodesic: k = 0, no frame beyond T
  out.normal_defined = (undefined == 0);
  if (!have_w || undefined > 0) return out;

  // U = nabla_T F2 + k T; torsion is its magnitude, F3 its direction.
  SampleMatrix<Scalar> u(n, gamma.cols());
  for (Eigen::Index i = 0; i < n; ++i) u.row(i) = w.row(i) + out.k[i] * tangent.row(i);
  const Scalar u_max = u.rowwise().norm().maxCoeff();

  if (u_max > Scalar(1e-7)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar mag = u.row(i).norm();
      out.tau[i] = mag;
      out.torsion_defined[i] = true;
      if (mag > Scalar(0)) out.binormal.row(i) = u.row(i) / mag;
    }
    out.binormal_defined = true;
    out.torsion_globally_defined = true;
    return out;
  }

  // Planar curve: tau = 0. Complete the frame orthogonally when the ambient
  // space leaves room for a third frame vector.
  out.tau.setZero();
  out.torsion_defined.setConstant(true);
  out.torsion_globally_defined = true;
  if (rank <= 3 && gamma.cols() == 3) return out;  // no room for F3 on S^2

  if (rank <= 3) {
    // Any constant unit direction orthogonal to the trajectory span is
    // parallel along the curve and closes the Frenet system with tau = 0.
    Eigen::JacobiSVD<SampleMatrix<Scalar>> svd(basis.transpose(), Eigen::ComputeFullV);
    const AmbientVector<Scalar> complement = svd.matrixV().col(rank);
    for (Eigen::Index i = 0; i < n; ++i) out.binormal.row(i) = complement.transpose();
  } else {
    // rank 4: take the in-span direction orthogonal to gamma, T, F2.
    AmbientVector<Scalar> previous = AmbientVector<Scalar>::Zero(gamma.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Matrix<Scalar, 4, 1> gu = basis.transpose() * gamma.row(i).transpose();
      Eigen::Matrix<Scalar, 4, 1> tu = basis.transpose() * tangent.row(i).transpose();
      Eigen::Matrix<Scalar, 4, 1> nu = basis.transpose() * out.normal.row(i).transpose();
      AmbientVector<Scalar> f3 = basis * cross4<Scalar>(gu, tu, nu);
      f3.normalize();
      if (i > 0 && f3.dot(previous) < Scalar(0)) f3 = -f3;
      out.binormal.row(i) = f3.transpose();
      previous = f3;
    }
  }
  out.binormal_defined = true;
  return out;
}

template <typename Scalar>
void frenet_diagnostics(FrenetData<Scalar>& data, const SampleMatrix<Scalar>& w,
                        const SampleMatrix<Scalar>& w3, bool have_w3) {
  Scalar ortho(0), residual(0);
  const Eigen::Index n = data.sample_count();
  using std::abs;
  for (Eigen::Index i = 0; i < n; ++i) {
    ortho = std::max(ortho, abs(data.tangent.row(i).norm() - Scalar(1)));
    if (data.normal_defined) {
      ortho = std::max(ortho, abs(data.normal.row(i).norm() - Scalar(1)));
      ortho = std::max(ortho, abs(data.tangent.row(i).dot(data.normal.row(i))));
      // nabla_T F2 = -k T + tau F3
      const auto expected = (-data.k[i] * data.tangent.row(i) +
                             data.tau[i] * data.binormal.row(i))
                                .eval();
      residual = std::max(residual, (w.row(i) - expected).norm());
    }
    if (data.binormal_defined) {
      ortho = std::max(ortho, abs(data.binormal.row(i).norm() - Scalar(1)));
      ortho = std::max(ortho, abs(data.tangent.row(i).dot(data.binormal.row(i))));
      ortho = std::max(ortho, abs(data.normal.row(i).dot(data.binormal.row(i))));
      if (have_w3) {
        // nabla_T F3 = -tau F2
        const auto expected3 = (-data.tau[i] * data.normal.row(i)).eval();
        residual = std::max(residual, (w3.row(i) - expected3).norm());
      }
    }
  }
  data.max_frame_orthonormality_error = ortho;
  data.max_frenet_residual = residual;
}

}  // namespace detail

/// Frenet data of a sampled curve (unit sphere; spectral differentiation).
template <typename Scalar>
FrenetData<Scalar> frenet_data(const DiscreteCurve<Scalar>& curve,
                               const SpaceForm<Scalar>& space = SpaceForm<Scalar>::unit_sphere()) {
  space.require_unit_sphere("frenet_data on an embedded curve");
  detail::require_unit_speed(curve);
  const auto stack = covariant_stack(curve, 1);
  const SampleMatrix<Scalar>& tangent = stack[0];
  const SampleMatrix<Scalar>& v1 = stack[1];
  const ScalarSamples<Scalar> k = v1.rowwise().norm();

  SampleMatrix<Scalar> w;
  const bool have_w = k.minCoeff() > Scalar(kTolFrenet);
  if (have_w) {
    SampleMatrix<Scalar> f2(curve.sample_count(), curve.dim());
    for (Eigen::Index i = 0; i < curve.sample_count(); ++i) f2.row(i) = v1.row(i) / k[i];
    GridVectorField<Scalar> gamma(curve.samples, curve.period);
    GridVectorField<Scalar> t_field(tangent, curve.period);
    GridVectorField<Scalar> f2_field(f2, curve.period);
    w = sphere_covariant_derivative(f2_field, gamma, t_field).values();
  }

  FrenetData<Scalar> out = detail::assemble_frenet<Scalar>(curve.grid(), curve.samples,
                                                           tangent, v1, w, have_w);
  SampleMatrix<Scalar> w3;
  bool have_w3 = false;
  if (out.binormal_defined) {
    GridVectorField<Scalar> gamma(curve.samples, curve.period);
    GridVectorField<Scalar> t_field(tangent, curve.period);
    GridVectorField<Scalar> f3_field(out.binormal, curve.period);
    w3 = sphere_covariant_derivative(f3_field, gamma, t_field).values();
    have_w3 = true;
  }
  detail::frenet_diagnostics(out, w, w3, have_w3);
  return out;
}

/// Frenet data of an ansatz curve by exact jet arithmetic. Works for
/// non-periodic (irrationally related) frequency sets as well.
template <typename Scalar>
FrenetData<Scalar> frenet_data(const CircleAnsatzCurve<Scalar>& curve,
                               const SpaceForm<Scalar>& space = SpaceForm<Scalar>::unit_sphere(),
                               Eigen::Index n_eval = 256) {
  space.require_unit_sphere("frenet_data on an embedded curve");
  detail::require_unit_speed(curve);
  auto [grid, window] = default_grid(curve, n_eval);

  const Eigen::Index n = grid.size();
  SampleMatrix<Scalar> gamma(n, curve.dim()), tangent(n, curve.dim()), v1(n, curve.dim()),
      w(n, curve.dim()), w3(n, curve.dim());
  bool have_w = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const VectorJet<Scalar> gj = curve_jet(curve, grid[i], 4);
    const VectorJet<Scalar> tj = gj.derivative(1);
    const VectorJet<Scalar> v1j = sphere_covariant_derivative(tj, gj, tj);
    gamma.row(i) = gj.value().transpose();
    tangent.row(i) = tj.value().transpose();
    v1.row(i) = v1j.value().transpose();
    const ScalarJet<Scalar> ksq = dot(v1j, v1j);
    if (ksq.value() > Scalar(kTolFrenet) * Scalar(kTolFrenet)) {
      const ScalarJet<Scalar> kj = sqrt(ksq);
      const VectorJet<Scalar> f2j = (ScalarJet<Scalar>::constant(Scalar(1), kj.order()) / kj) * v1j;
      const VectorJet<Scalar> wj = sphere_covariant_derivative(f2j, gj, tj);
      w.row(i) = wj.value().transpose();
      const VectorJet<Scalar> uj = wj + kj * tj;
      const ScalarJet<Scalar> usq = dot(uj, uj);
      if (usq.value() > Scalar(1e-14)) {
        const VectorJet<Scalar> f3j =
            (ScalarJet<Scalar>::constant(Scalar(1), usq.order()) / sqrt(usq)) * uj;
        const VectorJet<Scalar> w3j = sphere_covariant_derivative(f3j, gj, tj);
        w3.row(i) = w3j.value().transpose();
      } else {
        w3.row(i).setZero();
      }
    } else {
      have_w = false;
    }
  }

  FrenetData<Scalar> out = detail::assemble_frenet<Scalar>(grid, gamma, tangent, v1, w, have_w);
  // w3 was produced by differentiating U/|U|, valid only where tau > 0.
  const bool have_w3 = out.binormal_defined && out.tau.minCoeff() > Scalar(1e-7);
  detail::frenet_diagnostics(out, w, w3, have_w3);
  return out;
}

}  // namespace polycurve
