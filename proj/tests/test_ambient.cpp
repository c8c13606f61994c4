#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace polycurve;
using namespace polycurve::testing;

TEST_CASE("evaluate: r=3 circle at s=0 gives e1 + e3 with unit norm") {
  const auto circle = make_r_circle<double>(3);
  const auto value = evaluate(circle, 0.0);
  const auto expected = circle.terms.front().cos_axis + circle.constant_axis;
  CHECK((value - expected).norm() < 1e-15);
  CHECK(value.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evaluate: great circle stays a unit vector") {
  const auto gc = great_circle();
  for (double s : {0.0, 0.37, 1.9, 4.4}) CHECK(evaluate(gc, s).norm() == doctest::Approx(1.0));
}

TEST_CASE("evaluate: two-frequency curve at s=0 gives e1 + e3, norm 1") {
  const auto built = make_biharmonic_two_freq(std::sqrt(1.3));
  const auto value = evaluate(built.curve, 0.0);
  const auto expected = built.curve.terms[0].cos_axis + built.curve.terms[1].cos_axis;
  CHECK((value - expected).norm() < 1e-15);
  CHECK(value.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evaluate keeps unit norm at 1000 random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uniform(-30.0, 30.0);
  const auto curve = random_ansatz(rng, 2);
  double worst = 0;
  for (int i = 0; i < 1000; ++i)
    worst = std::max(worst, std::abs(evaluate(curve, uniform(rng)).norm() - 1.0));
  CHECK(worst < 1e-13);
}

TEST_CASE("derivatives_analytic: great circle has gamma'' = -gamma") {
  const auto gc = great_circle();
  const auto stack = derivatives_analytic(gc, 0.8, 2);
  CHECK((stack[2] + stack[0]).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("derivatives_analytic: r=2 circle satisfies gamma^(4) + 2 gamma'' = 0") {
  const auto circle = make_r_circle<double>(2);
  const auto stack = derivatives_analytic(circle, 0.45, 4);
  // gamma^(4) = a^4 * oscillating part = 4 * (gamma - e0)
  const AmbientVectord oscillating = stack[0].row(0).transpose() - circle.constant_axis;
  CHECK((stack[4].row(0).transpose() - 4.0 * oscillating).norm() < 1e-13);
  CHECK((stack[4] + 2.0 * stack[2]).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("derivatives_analytic: order 0 returns just the curve") {
  const auto circle = make_r_circle<double>(2);
  const auto stack = derivatives_analytic(circle, 1.1, 0);
  CHECK(stack.order() == 0);
  CHECK((stack[0].row(0).transpose() - evaluate(circle, 1.1)).norm() == 0.0);
}

TEST_CASE("derivatives_analytic rejects negative order") {
  CHECK_THROWS_AS(derivatives_analytic(great_circle(), 0.0, -1), InvalidArgument);
}

TEST_CASE("arclength identities hold sample-wise for unit-speed curves") {
  // <g,g'> = 0, <g'',g> = -1, <g''',g> = 0, <g',g''> = 0, <g4,g> = |g''|^2
  auto check_identities = [](const DerivativeStackd& stack, double tol) {
    for (Eigen::Index i = 0; i < stack.sample_count(); ++i) {
      const auto g = stack[0].row(i), g1 = stack[1].row(i), g2 = stack[2].row(i),
                 g3 = stack[3].row(i), g4 = stack[4].row(i);
      CHECK(std::abs(g.dot(g1)) < tol);
      CHECK(std::abs(g2.dot(g) + 1.0) < tol);
      CHECK(std::abs(g3.dot(g)) < tol);
      CHECK(std::abs(g1.dot(g2)) < tol);
      CHECK(std::abs(g4.dot(g) - g2.squaredNorm()) < tol);
    }
  };
  for (int r : {2, 3, 4}) {
    const auto circle = make_r_circle<double>(r);
    ScalarSamples<double> grid(8);
    for (int i = 0; i < 8; ++i) grid[i] = 0.51 * i;
    check_identities(derivatives_analytic(circle, grid, 4), 1e-12);
  }
  // after reparametrization of a non-unit-speed curve, to 1e-6
  const auto fixed = arclength_reparametrize(perturbed_circle(128, 0.25));
  check_identities(derivatives_spectral(fixed, 4), 1e-6);
}

TEST_CASE("arclength_reparametrize: unit-speed input is a fixed point") {
  const auto disc = sample(make_r_circle<double>(3), 128);
  const auto out = arclength_reparametrize(disc);
  CHECK((out.samples - disc.samples).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(out.period - disc.period) / disc.period < 1e-6);
}

TEST_CASE("arclength_reparametrize fixes a mislabeled speed-2 circle") {
  DiscreteCurved fast;
  fast.period = EIGEN_PI;  // true curve period is 2 pi
  fast.samples.resize(128, 3);
  for (int i = 0; i < 128; ++i) {
    const double s = 2.0 * EIGEN_PI * i / 128.0;
    fast.samples.row(i) << std::cos(s), std::sin(s), 0.0;
  }
  const auto fixed = arclength_reparametrize(fast);
  const auto speed = speed_samples(fixed);
  CHECK((speed.array() - 1.0).abs().maxCoeff() < 1e-6);
  CHECK(fixed.period == doctest::Approx(2.0 * EIGEN_PI).epsilon(1e-6));
}

TEST_CASE("arclength_reparametrize: perturbed circle, chord-length oracle") {
  const auto curve = perturbed_circle(128, 0.3);
  const auto fixed = arclength_reparametrize(curve);
  const auto speed = speed_samples(fixed);
  CHECK((speed.array() - 1.0).abs().maxCoeff() < 1e-6);

  // independent oracle: cumulative chord length at 10x the resolution
  const Eigen::Index fine_n = 10 * curve.sample_count();
  const auto fine = fourier_resample(curve.samples, fine_n);
  double length = 0;
  for (Eigen::Index i = 0; i < fine_n; ++i)
    length += (fine.row((i + 1) % fine_n) - fine.row(i)).norm();
  CHECK(fixed.period == doctest::Approx(length).epsilon(1e-5));
}

TEST_CASE("arclength_reparametrize rejects curves with a vanishing tangent") {
  DiscreteCurved degenerate;
  degenerate.period = 1.0;
  degenerate.samples.resize(16, 3);
  for (int i = 0; i < 16; ++i) degenerate.samples.row(i) << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(arclength_reparametrize(degenerate), InvalidArgument);
}

TEST_CASE("ansatz validation enforces the sphere invariants") {
  auto circle = make_r_circle<double>(3);
  SUBCASE("non-orthogonal axes") {
    circle.terms.front().sin_axis = circle.terms.front().cos_axis;
    CHECK_THROWS_AS(circle.validate(), InvalidArgument);
  }
  SUBCASE("norms not summing to one") {
    circle.constant_axis *= 0.5;
    CHECK_THROWS_AS(circle.validate(), InvalidArgument);
  }
  SUBCASE("nonpositive frequency") {
    circle.terms.front().frequency = -1.0;
    CHECK_THROWS_AS(circle.validate(), InvalidArgument);
  }
}

TEST_CASE("discrete validation enforces grid and sphere invariants") {
  auto disc = sample(make_r_circle<double>(2), 32);
  CHECK_NOTHROW(disc.validate());
  SUBCASE("odd sample count") {
    DiscreteCurved odd = disc;
    odd.samples.conservativeResize(31, Eigen::NoChange);
    CHECK_THROWS_AS(odd.validate(), InvalidArgument);
  }
  SUBCASE("too few samples") {
    DiscreteCurved tiny = disc;
    tiny.samples.conservativeResize(14, Eigen::NoChange);
    CHECK_THROWS_AS(tiny.validate(), InvalidArgument);
  }
  SUBCASE("off-sphere sample") {
    DiscreteCurved off = disc;
    off.samples(3, 0) += 1e-6;
    CHECK_THROWS_AS(off.validate(), InvalidArgument);
  }
}

TEST_CASE("fundamental period: rational ratios combine, irrational ones do not") {
  const auto rational = make_two_freq_unit_speed<double>(1.6, 0.4);  // ratio 2
  const auto period = fundamental_period(rational);
  REQUIRE(period.has_value());
  // both frequencies complete whole turns over the period
  for (const auto& term : rational.terms) {
    const double turns = term.frequency * *period / (2.0 * EIGEN_PI);
    CHECK(turns == doctest::Approx(std::round(turns)).epsilon(1e-10));
  }

  const auto irrational = make_biharmonic_two_freq(std::sqrt(1.5)).curve;  // ratio sqrt 3
  CHECK_FALSE(fundamental_period(irrational).has_value());
  CHECK_THROWS_AS(sample(irrational, 64), InvalidArgument);
}
