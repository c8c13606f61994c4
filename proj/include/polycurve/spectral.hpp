#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "polycurve/errors.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

namespace detail {

/// Signed integer mode number of bin k in an N-point spectrum; bin N/2 is the
/// Nyquist mode and is treated as -N/2.
inline long mode_number(Eigen::Index k, Eigen::Index n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

template <typename Scalar>
std::vector<std::complex<Scalar>> to_complex(const ScalarSamples<Scalar>& x) {
  std::vector<std::complex<Scalar>> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = std::complex<Scalar>(x[i], Scalar(0));
  return out;
}

}  // namespace detail

/// Spectrum of a real periodic sample sequence (full complex spectrum).
template <typename Scalar>
std::vector<std::complex<Scalar>> fourier_coefficients(const ScalarSamples<Scalar>& values) {
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> in = detail::to_complex(values), freq(values.size());
  fft.fwd(freq, in);
  return freq;
}

/// Relative magnitude below which a spectral bin counts as rounding noise.
/// High-order derivative multipliers amplify the epsilon-level leakage of the
/// forward transform by (2 pi N / (2 L))^order, which would swamp 8th
/// derivatives entirely; clipping the noise floor keeps band-limited
/// differentiation exact at every supported order.
inline constexpr double kSpectralNoiseFloor = 1e-13;

/// order-th derivative of a real periodic sequence sampled uniformly over one
/// period of length L, by trigonometric interpolation. Exact for band-limited
/// input with highest mode below N/2. The Nyquist bin is zeroed for odd
/// orders (its derivative is not representable on the grid) and carries the
/// real factor (i k)^order for even orders.
template <typename Scalar>
ScalarSamples<Scalar> fourier_derivative(const ScalarSamples<Scalar>& values, Scalar period,
                                         int order) {
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (order > kMaxDerivativeOrder)
    throw InvalidArgument("derivative order exceeds the supported maximum");
  const Eigen::Index n = values.size();
  if (n % 2 != 0) throw InvalidArgument("spectral differentiation needs an even sample count");
  if (order == 0) return values;

  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> in = detail::to_complex(values), freq(n), out(n);
  fft.fwd(freq, in);
  Scalar peak(0);
  for (const auto& f : freq) peak = std::max(peak, std::abs(f));
  const Scalar floor = Scalar(kSpectralNoiseFloor) * peak;
  const Scalar base = Scalar(2) * Scalar(EIGEN_PI) / period;
  for (Eigen::Index k = 0; k < n; ++k) {
    const long m = detail::mode_number(k, n);
    if (std::abs(freq[k]) <= floor || (k == n / 2 && order % 2 == 1)) {
      freq[k] = std::complex<Scalar>(0, 0);
      continue;
    }
    std::complex<Scalar> factor(1, 0);
    const std::complex<Scalar> ik(Scalar(0), base * Scalar(m));
    for (int p = 0; p < order; ++p) factor *= ik;
    freq[k] *= factor;
  }
  fft.inv(out, freq);
  ScalarSamples<Scalar> result(n);
  for (Eigen::Index i = 0; i < n; ++i) result[i] = out[i].real();
  return result;
}

/// Column-wise spectral derivative of a sample block (rows = grid points).
template <typename Scalar>
SampleMatrix<Scalar> fourier_derivative(const SampleMatrix<Scalar>& values, Scalar period,
                                        int order) {
  SampleMatrix<Scalar> out(values.rows(), values.cols());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    const ScalarSamples<Scalar> column = values.col(c);
    out.col(c) = fourier_derivative<Scalar>(column, period, order);
  }
  return out;
}

/// Periodic antiderivative with zero mean plus the linear ramp of the mean
/// mode: returns F with F' = values and F(0) = 0.
template <typename Scalar>
ScalarSamples<Scalar> fourier_antiderivative(const ScalarSamples<Scalar>& values,
                                             Scalar period) {
  const Eigen::Index n = values.size();
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> in = detail::to_complex(values), freq(n), out(n);
  fft.fwd(freq, in);
  const Scalar mean = freq[0].real() / Scalar(n);
  const Scalar base = Scalar(2) * Scalar(EIGEN_PI) / period;
  freq[0] = std::complex<Scalar>(0, 0);
  for (Eigen::Index k = 1; k < n; ++k) {
    if (k == n / 2) {  // Nyquist cosine has no grid-representable antiderivative
      freq[k] = std::complex<Scalar>(0, 0);
      continue;
    }
    const long m = detail::mode_number(k, n);
    freq[k] /= std::complex<Scalar>(Scalar(0), base * Scalar(m));
  }
  fft.inv(out, freq);
  ScalarSamples<Scalar> result(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar s = period * Scalar(i) / Scalar(n);
    result[i] = out[i].real() - out[0].real() + mean * s;
  }
  return result;
}

/// Band-limited interpolant of uniformly sampled periodic data; evaluates the
/// trigonometric polynomial at arbitrary parameter values.
template <typename Scalar>
class TrigInterpolant {
 public:
  TrigInterpolant(const SampleMatrix<Scalar>& values, Scalar period) : period_(period) {
    const Eigen::Index n = values.rows();
    if (n % 2 != 0) throw InvalidArgument("trigonometric interpolation needs even sample count");
    coeffs_.reserve(values.cols());
    Eigen::FFT<Scalar> fft;
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      std::vector<std::complex<Scalar>> in = detail::to_complex<Scalar>(values.col(c)), freq(n);
      fft.fwd(freq, in);
      for (auto& f : freq) f /= Scalar(n);
      coeffs_.push_back(std::move(freq));
    }
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(coeffs_.size()); }

  AmbientVector<Scalar> operator()(Scalar s) const {
    const Eigen::Index n = static_cast<Eigen::Index>(coeffs_.front().size());
    const Scalar base = Scalar(2) * Scalar(EIGEN_PI) / period_;
    AmbientVector<Scalar> out = AmbientVector<Scalar>::Zero(dim());
    for (Eigen::Index k = 0; k < n; ++k) {
      const long m = detail::mode_number(k, n);
      // The Nyquist bin aggregates e^{+i(N/2)w} and e^{-i(N/2)w}; evaluating
      // it as cos keeps the interpolant real and matches the grid samples.
      std::complex<Scalar> phase;
      using std::cos;
      using std::sin;
      if (k == n / 2)
        phase = std::complex<Scalar>(cos(base * Scalar(n / 2) * s), Scalar(0));
      else
        phase = std::complex<Scalar>(cos(base * Scalar(m) * s), sin(base * Scalar(m) * s));
      for (Eigen::Index c = 0; c < dim(); ++c) out[c] += (coeffs_[c][k] * phase).real();
    }
    return out;
  }

 private:
  Scalar period_;
  std::vector<std::vector<std::complex<Scalar>>> coeffs_;
};

/// Resample periodic data to a different uniform resolution by zero padding
/// or truncating the spectrum.
template <typename Scalar>
SampleMatrix<Scalar> fourier_resample(const SampleMatrix<Scalar>& values, Eigen::Index m) {
  const Eigen::Index n = values.rows();
  if (m % 2 != 0 || n % 2 != 0) throw InvalidArgument("resampling needs even sample counts");
  Eigen::FFT<Scalar> fft;
  SampleMatrix<Scalar> out(m, values.cols());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    std::vector<std::complex<Scalar>> in = detail::to_complex<Scalar>(values.col(c)), freq(n);
    fft.fwd(freq, in);
    std::vector<std::complex<Scalar>> padded(m, std::complex<Scalar>(0, 0));
    const Eigen::Index keep = std::min(n, m) / 2;
    for (Eigen::Index k = 0; k < keep; ++k) padded[k] = freq[k];
    for (Eigen::Index k = 1; k < keep; ++k) padded[m - k] = freq[n - k];
    if (m > n) {  // split the Nyquist bin symmetrically
      padded[keep] = freq[n / 2] / Scalar(2);
      padded[m - keep] = freq[n / 2] / Scalar(2);
    } else if (m < n) {
      padded[keep] = freq[keep] + freq[n - keep];
    } else {
      padded[keep] = freq[keep];
    }
    std::vector<std::complex<Scalar>> outc(m);
    fft.inv(outc, padded);
    for (Eigen::Index i = 0; i < m; ++i) out(i, c) = outc[i].real() * Scalar(m) / Scalar(n);
  }
  return out;
}

}  // namespace polycurve
