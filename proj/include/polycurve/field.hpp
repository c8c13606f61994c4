#pragma once

#include <cmath>

#include "polycurve/errors.hpp"
#include "polycurve/spectral.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

// Periodic scalar/vector fields sampled on a uniform grid, with the same
// expression surface as the jet types: +, -, products, dot, derivative(n).
// Formulas written against this surface evaluate identically through the
// analytic (jet) and spectral (grid) pipelines.

template <typename Scalar>
class GridScalarField {
 public:
  using ScalarType = Scalar;

  GridScalarField() = default;
  GridScalarField(ScalarSamples<Scalar> values, Scalar period)
      : values_(std::move(values)), period_(period) {}

  static GridScalarField constant(Scalar v, Eigen::Index n, Scalar period) {
    return GridScalarField(ScalarSamples<Scalar>::Constant(n, v), period);
  }

  const ScalarSamples<Scalar>& values() const { return values_; }
  Scalar period() const { return period_; }
  Eigen::Index size() const { return values_.size(); }

  GridScalarField derivative(int n = 1) const {
    return GridScalarField(fourier_derivative<Scalar>(values_, period_, n), period_);
  }

  friend GridScalarField operator+(const GridScalarField& a, const GridScalarField& b) {
    return GridScalarField(a.values_ + b.values_, a.period_);
  }
  friend GridScalarField operator-(const GridScalarField& a, const GridScalarField& b) {
    return GridScalarField(a.values_ - b.values_, a.period_);
  }
  friend GridScalarField operator-(const GridScalarField& a) {
    return GridScalarField(-a.values_, a.period_);
  }
  friend GridScalarField operator*(const GridScalarField& a, const GridScalarField& b) {
    return GridScalarField(a.values_.cwiseProduct(b.values_), a.period_);
  }
  friend GridScalarField operator*(Scalar c, const GridScalarField& a) {
    return GridScalarField(c * a.values_, a.period_);
  }
  friend GridScalarField operator*(const GridScalarField& a, Scalar c) { return c * a; }
  friend GridScalarField operator+(const GridScalarField& a, Scalar c) {
    return GridScalarField(a.values_.array() + c, a.period_);
  }
  friend GridScalarField operator+(Scalar c, const GridScalarField& a) { return a + c; }
  friend GridScalarField operator-(const GridScalarField& a, Scalar c) { return a + (-c); }
  friend GridScalarField operator-(Scalar c, const GridScalarField& a) { return (-a) + c; }
  friend GridScalarField operator/(const GridScalarField& a, const GridScalarField& b) {
    return GridScalarField(a.values_.cwiseQuotient(b.values_), a.period_);
  }
  friend GridScalarField sqrt(const GridScalarField& a) {
    return GridScalarField(a.values_.cwiseSqrt(), a.period_);
  }

 private:
  ScalarSamples<Scalar> values_;
  Scalar period_{};
};

template <typename Scalar>
class GridVectorField {
 public:
  using ScalarType = Scalar;

  GridVectorField() = default;
  GridVectorField(SampleMatrix<Scalar> values, Scalar period)
      : values_(std::move(values)), period_(period) {}

  const SampleMatrix<Scalar>& values() const { return values_; }
  Scalar period() const { return period_; }
  Eigen::Index size() const { return values_.rows(); }
  Eigen::Index dim() const { return values_.cols(); }

  GridVectorField derivative(int n = 1) const {
    return GridVectorField(fourier_derivative<Scalar>(values_, period_, n), period_);
  }

  friend GridVectorField operator+(const GridVectorField& a, const GridVectorField& b) {
    return GridVectorField(a.values_ + b.values_, a.period_);
  }
  friend GridVectorField operator-(const GridVectorField& a, const GridVectorField& b) {
    return GridVectorField(a.values_ - b.values_, a.period_);
  }
  friend GridVectorField operator-(const GridVectorField& a) {
    return GridVectorField(-a.values_, a.period_);
  }
  friend GridVectorField operator*(Scalar c, const GridVectorField& a) {
    return GridVectorField(c * a.values_, a.period_);
  }
  friend GridVectorField operator*(const GridVectorField& a, Scalar c) { return c * a; }
  friend GridVectorField operator*(const GridScalarField<Scalar>& f, const GridVectorField& a) {
    return GridVectorField(a.values_.array().colwise() * f.values().array(), a.period_);
  }
  friend GridVectorField operator*(const GridVectorField& a, const GridScalarField<Scalar>& f) {
    return f * a;
  }

  friend GridScalarField<Scalar> dot(const GridVectorField& a, const GridVectorField& b) {
    return GridScalarField<Scalar>((a.values_.array() * b.values_.array()).rowwise().sum(),
                                   a.period_);
  }

 private:
  SampleMatrix<Scalar> values_;
  Scalar period_{};
};

}  // namespace polycurve
