#pragma once

#include <Eigen/Dense>

#include <type_traits>
#include <vector>

namespace polycurve {

/// Vector in the Euclidean embedding space R^{n+1} of the unit sphere.
template <typename Scalar>
using AmbientVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Sample block: row i holds the ambient vector at parameter value s_i.
template <typename Scalar>
using SampleMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ScalarSamples = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using AmbientVectord = AmbientVector<double>;
using SampleMatrixd = SampleMatrix<double>;

/// gamma, gamma', ..., gamma^(m) sampled on a common parameter grid.
template <typename Scalar>
struct DerivativeStack {
  // values[l] holds the l-th parameter derivative, one sample per row.
  std::vector<SampleMatrix<Scalar>> values;

  int order() const { return static_cast<int>(values.size()) - 1; }
  Eigen::Index sample_count() const {
    return values.empty() ? 0 : values.front().rows();
  }
  const SampleMatrix<Scalar>& operator[](int l) const { return values[l]; }
};

using DerivativeStackd = DerivativeStack<double>;

template <typename Scalar>
inline constexpr bool is_supported_scalar_v = std::is_floating_point_v<Scalar>;

}  // namespace polycurve
