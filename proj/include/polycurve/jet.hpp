#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "polycurve/errors.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

namespace detail {

/// Binomial coefficient table, C(n,k) for n,k <= kMaxJetOrder.
inline constexpr int kMaxJetOrder = 24;

inline double binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<double, kMaxJetOrder + 1>, kMaxJetOrder + 1> t{};
    for (int i = 0; i <= kMaxJetOrder; ++i) {
      t[i][0] = 1.0;
      for (int j = 1; j <= i; ++j)
        t[i][j] = (j == i) ? 1.0 : t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  return table[n][k];
}

}  // namespace detail

/// Truncated derivative jet of a scalar function of the curve parameter:
/// stores f(s), f'(s), ..., f^(J)(s). Products use the Leibniz rule, so any
/// expression assembled from jets carries exact derivatives of itself.
template <typename Scalar>
class ScalarJet {
 public:
  using ScalarType = Scalar;

  ScalarJet() = default;
  explicit ScalarJet(int order)
      : d_(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(order + 1)) {}

  static ScalarJet constant(Scalar value, int order) {
    ScalarJet j(order);
    j.d_[0] = value;
    return j;
  }

  int order() const { return static_cast<int>(d_.size()) - 1; }
  Scalar value() const { return d_[0]; }
  Scalar deriv(int l) const { return d_[l]; }
  Scalar& deriv(int l) { return d_[l]; }

  /// Jet of d^n f / ds^n; loses n trailing orders.
  ScalarJet derivative(int n = 1) const {
    if (n > order()) throw InvalidArgument("jet order exhausted");
    ScalarJet out(order() - n);
    for (int l = 0; l <= out.order(); ++l) out.d_[l] = d_[l + n];
    return out;
  }

  ScalarJet truncated(int order) const {
    ScalarJet out(order);
    for (int l = 0; l <= order; ++l) out.d_[l] = l <= this->order() ? d_[l] : Scalar(0);
    return out;
  }

  friend ScalarJet operator+(const ScalarJet& a, const ScalarJet& b) {
    const int n = std::min(a.order(), b.order());
    ScalarJet out(n);
    for (int l = 0; l <= n; ++l) out.d_[l] = a.d_[l] + b.d_[l];
    return out;
  }
  friend ScalarJet operator-(const ScalarJet& a, const ScalarJet& b) {
    const int n = std::min(a.order(), b.order());
    ScalarJet out(n);
    for (int l = 0; l <= n; ++l) out.d_[l] = a.d_[l] - b.d_[l];
    return out;
  }
  friend ScalarJet operator-(const ScalarJet& a) {
    ScalarJet out(a.order());
    out.d_ = -a.d_;
    return out;
  }
  friend ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
    const int n = std::min(a.order(), b.order());
    ScalarJet out(n);
    for (int l = 0; l <= n; ++l) {
      Scalar acc(0);
      for (int j = 0; j <= l; ++j)
        acc += static_cast<Scalar>(detail::binomial(l, j)) * a.d_[j] * b.d_[l - j];
      out.d_[l] = acc;
    }
    return out;
  }
  friend ScalarJet operator*(Scalar c, const ScalarJet& a) {
    ScalarJet out(a.order());
    out.d_ = c * a.d_;
    return out;
  }
  friend ScalarJet operator*(const ScalarJet& a, Scalar c) { return c * a; }
  friend ScalarJet operator+(const ScalarJet& a, Scalar c) {
    ScalarJet out = a;
    out.d_[0] += c;
    return out;
  }
  friend ScalarJet operator+(Scalar c, const ScalarJet& a) { return a + c; }
  friend ScalarJet operator-(const ScalarJet& a, Scalar c) { return a + (-c); }
  friend ScalarJet operator-(Scalar c, const ScalarJet& a) { return (-a) + c; }

  /// h = a / b solved from b*h = a level by level; requires b(s) != 0.
  friend ScalarJet operator/(const ScalarJet& a, const ScalarJet& b) {
    const int n = std::min(a.order(), b.order());
    if (b.d_[0] == Scalar(0)) throw InvalidArgument("jet division by zero");
    ScalarJet h(n);
    for (int l = 0; l <= n; ++l) {
      Scalar acc = a.d_[l];
      for (int j = 1; j <= l; ++j)
        acc -= static_cast<Scalar>(detail::binomial(l, j)) * b.d_[j] * h.d_[l - j];
      h.d_[l] = acc / b.d_[0];
    }
    return h;
  }

  /// h = sqrt(a) solved from h*h = a level by level; requires a(s) > 0.
  friend ScalarJet sqrt(const ScalarJet& a) {
    const int n = a.order();
    if (!(a.d_[0] > Scalar(0))) throw InvalidArgument("jet sqrt of non-positive value");
    ScalarJet h(n);
    h.d_[0] = std::sqrt(a.d_[0]);
    for (int l = 1; l <= n; ++l) {
      Scalar acc = a.d_[l];
      for (int j = 1; j < l; ++j)
        acc -= static_cast<Scalar>(detail::binomial(l, j)) * h.d_[j] * h.d_[l - j];
      h.d_[l] = acc / (Scalar(2) * h.d_[0]);
    }
    return h;
  }

 private:
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d_;
};

/// Derivative jet of an ambient-vector-valued function: row l holds the l-th
/// parameter derivative of the vector.
template <typename Scalar>
class VectorJet {
 public:
  using ScalarType = Scalar;

  VectorJet() = default;
  VectorJet(int order, Eigen::Index dim)
      : rows_(SampleMatrix<Scalar>::Zero(order + 1, dim)) {}

  int order() const { return static_cast<int>(rows_.rows()) - 1; }
  Eigen::Index dim() const { return rows_.cols(); }

  AmbientVector<Scalar> value() const { return rows_.row(0).transpose(); }
  AmbientVector<Scalar> deriv(int l) const { return rows_.row(l).transpose(); }
  void set_deriv(int l, const AmbientVector<Scalar>& v) { rows_.row(l) = v.transpose(); }

  VectorJet derivative(int n = 1) const {
    if (n > order()) throw InvalidArgument("jet order exhausted");
    VectorJet out(order() - n, dim());
    out.rows_ = rows_.bottomRows(rows_.rows() - n);
    return out;
  }

  friend VectorJet operator+(const VectorJet& a, const VectorJet& b) {
    const int n = std::min(a.order(), b.order());
    VectorJet out(n, a.dim());
    out.rows_ = a.rows_.topRows(n + 1) + b.rows_.topRows(n + 1);
    return out;
  }
  friend VectorJet operator-(const VectorJet& a, const VectorJet& b) {
    const int n = std::min(a.order(), b.order());
    VectorJet out(n, a.dim());
    out.rows_ = a.rows_.topRows(n + 1) - b.rows_.topRows(n + 1);
    return out;
  }
  friend VectorJet operator-(const VectorJet& a) {
    VectorJet out = a;
    out.rows_ = -out.rows_;
    return out;
  }
  friend VectorJet operator*(Scalar c, const VectorJet& a) {
    VectorJet out = a;
    out.rows_ *= c;
    return out;
  }
  friend VectorJet operator*(const VectorJet& a, Scalar c) { return c * a; }

  /// Leibniz product of a scalar jet with a vector jet.
  friend VectorJet operator*(const ScalarJet<Scalar>& f, const VectorJet& a) {
    const int n = std::min(f.order(), a.order());
    VectorJet out(n, a.dim());
    for (int l = 0; l <= n; ++l) {
      for (int j = 0; j <= l; ++j)
        out.rows_.row(l) +=
            static_cast<Scalar>(detail::binomial(l, j)) * f.deriv(j) * a.rows_.row(l - j);
    }
    return out;
  }
  friend VectorJet operator*(const VectorJet& a, const ScalarJet<Scalar>& f) { return f * a; }

  /// Jet of the Euclidean inner product <a, b>.
  friend ScalarJet<Scalar> dot(const VectorJet& a, const VectorJet& b) {
    const int n = std::min(a.order(), b.order());
    ScalarJet<Scalar> out(n);
    for (int l = 0; l <= n; ++l) {
      Scalar acc(0);
      for (int j = 0; j <= l; ++j)
        acc += static_cast<Scalar>(detail::binomial(l, j)) *
               a.rows_.row(j).dot(b.rows_.row(l - j));
      out.deriv(l) = acc;
    }
    return out;
  }

 private:
  SampleMatrix<Scalar> rows_;
};

using ScalarJetd = ScalarJet<double>;
using VectorJetd = VectorJet<double>;

}  // namespace polycurve
