#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace polycurve;
using namespace polycurve::testing;

TEST_CASE("scalar jets carry exact derivatives through products and quotients") {
  // f(s) = sin(2s), g(s) = 2 + cos(s) at s0 = 0.7, checked against hand
  // derivatives of f*g, f/g and sqrt(g).
  const double s0 = 0.7;
  const int order = 4;
  ScalarJetd f(order), g(order);
  for (int l = 0; l <= order; ++l) {
    const double phase = 2.0 * s0 + l * EIGEN_PI / 2.0;
    f.deriv(l) = std::pow(2.0, l) * std::sin(phase);
    g.deriv(l) = (l == 0 ? 2.0 : 0.0) + std::cos(s0 + l * EIGEN_PI / 2.0);
  }

  const auto product = f * g;
  // (fg)'' = f''g + 2f'g' + fg''
  const double expected_pp =
      f.deriv(2) * g.deriv(0) + 2.0 * f.deriv(1) * g.deriv(1) + f.deriv(0) * g.deriv(2);
  CHECK(product.deriv(2) == doctest::Approx(expected_pp).epsilon(1e-14));

  const auto quotient = f / g;
  const auto back = quotient * g;
  for (int l = 0; l <= order; ++l)
    CHECK(back.deriv(l) == doctest::Approx(f.deriv(l)).epsilon(1e-13));

  const auto root = sqrt(g);
  const auto squared = root * root;
  for (int l = 0; l <= order; ++l)
    CHECK(squared.deriv(l) == doctest::Approx(g.deriv(l)).epsilon(1e-13));

  CHECK_THROWS_AS(sqrt(ScalarJetd::constant(-1.0, 2)), InvalidArgument);
}

TEST_CASE("vector jets: dot carries the Leibniz rule, derivative shifts") {
  auto curve = make_r_circle<double>(3);
  const auto jet = curve_jet(curve, 0.3, 6);
  // d/ds <gamma, gamma> = 0 on the sphere, all orders
  const auto norm_sq = dot(jet, jet);
  CHECK(norm_sq.value() == doctest::Approx(1.0).epsilon(1e-14));
  for (int l = 1; l <= 6; ++l) CHECK(std::abs(norm_sq.deriv(l)) < 1e-12);
  // derivative(2) of the jet equals the analytic second-derivative jet
  const auto second = jet.derivative(2);
  CHECK((second.value() - derivative(curve, 0.3, 2)).norm() < 1e-14);
  CHECK((second.deriv(1) - derivative(curve, 0.3, 3)).norm() < 1e-14);
}

TEST_CASE("spectral derivative of a sampled great circle: gamma'' = -gamma") {
  const auto disc = sample(great_circle(3), 64);
  const auto stack = derivatives_spectral(disc, 2);
  const double err = (stack[2] + stack[0]).cwiseAbs().maxCoeff();
  CHECK(err < 1e-10);
}

TEST_CASE("spectral matches analytic derivatives on the sampled r=3 circle") {
  const auto circle = make_r_circle<double>(3);
  const auto disc = sample(circle, 128);
  const auto stack = derivatives_spectral(disc, 6);
  double worst = 0;
  for (int l = 0; l <= 6; ++l) {
    for (Eigen::Index i = 0; i < disc.sample_count(); ++i) {
      const double s = disc.period * double(i) / double(disc.sample_count());
      worst = std::max(worst,
                       (stack[l].row(i).transpose() - derivative(circle, s, l)).norm());
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("derivative of the constant component vanishes") {
  // mean mode of any periodic derivative is zero; a constant curve is the
  // degenerate case
  DiscreteCurved constant;
  constant.period = 2.0 * EIGEN_PI;
  constant.samples.resize(16, 3);
  for (int i = 0; i < 16; ++i) constant.samples.row(i) << 1.0, 0.0, 0.0;
  const auto stack = derivatives_spectral(constant, 1);
  CHECK(stack[1].cwiseAbs().maxCoeff() < 1e-12);

  const auto disc = perturbed_circle(64);
  const auto d1 = fourier_derivative(disc.samples, disc.period, 1);
  CHECK(d1.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectral differentiation rejects odd sample counts and high orders") {
  ScalarSamples<double> odd(15);
  odd.setOnes();
  CHECK_THROWS_AS(fourier_derivative<double>(odd, 1.0, 1), InvalidArgument);
  const auto disc = sample(great_circle(3), 32);
  CHECK_THROWS_AS(derivatives_spectral(disc, kMaxDerivativeOrder + 1), InvalidArgument);
  CHECK_THROWS_AS(derivatives_spectral(disc, -1), InvalidArgument);
}

TEST_CASE("spectral reproduces analytic derivatives to 1e-8 for all orders <= 8") {
  // sampling condition N > 4 * (max frequency * L / 2 pi)
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    auto curve = single_circle(std::sqrt(2.0 + trial), 1.0 / (2.0 + trial));
    const auto period = fundamental_period(curve);
    REQUIRE(period.has_value());
    const double modes = curve.max_frequency() * *period / (2.0 * EIGEN_PI);
    const Eigen::Index n = std::max<Eigen::Index>(16, 8 * static_cast<Eigen::Index>(modes) + 8);
    const auto disc = sample(curve, n);
    const auto stack = derivatives_spectral(disc, 8);
    double worst = 0;
    for (int l = 0; l <= 8; ++l)
      for (Eigen::Index i = 0; i < n; i += 7) {
        const double s = disc.period * double(i) / double(n);
        worst = std::max(worst,
                         (stack[l].row(i).transpose() - derivative(curve, s, l)).norm());
      }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("antiderivative inverts the spectral derivative") {
  const Eigen::Index n = 64;
  const double period = 3.0;
  ScalarSamples<double> f(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = period * double(i) / double(n);
    f[i] = 1.5 + std::sin(2.0 * EIGEN_PI * s / period) +
           0.25 * std::cos(4.0 * EIGEN_PI * s / period);
  }
  const auto big_f = fourier_antiderivative(f, period);
  // derivative of the non-ramp part plus the mean recovers f
  ScalarSamples<double> ramp_removed(n);
  const double mean = f.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = period * double(i) / double(n);
    ramp_removed[i] = big_f[i] - mean * s;
  }
  const auto back = fourier_derivative(ramp_removed, period, 1);
  CHECK((back.array() + mean - f.array()).abs().maxCoeff() < 1e-12);
  CHECK(big_f[0] == doctest::Approx(0.0));
}

TEST_CASE("trigonometric interpolation hits the samples and between them") {
  const auto circle = make_r_circle<double>(2);
  const auto disc = sample(circle, 32);
  const TrigInterpolant<double> interp(disc.samples, disc.period);
  CHECK((interp(0.0) - evaluate(circle, 0.0)).norm() < 1e-13);
  const double s_mid = disc.period * 0.5 / 32.0 + disc.period / 7.0;
  CHECK((interp(s_mid) - evaluate(circle, s_mid)).norm() < 1e-12);
}

TEST_CASE("resampling is exact for band-limited curves") {
  const auto circle = make_r_circle<double>(3);
  const auto coarse = sample(circle, 32);
  const auto fine = fourier_resample(coarse.samples, 128);
  double worst = 0;
  for (Eigen::Index i = 0; i < 128; ++i) {
    const double s = coarse.period * double(i) / 128.0;
    worst = std::max(worst, (fine.row(i).transpose() - evaluate(circle, s)).norm());
  }
  CHECK(worst < 1e-12);
}
