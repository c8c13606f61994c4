#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace polycurve;
using namespace polycurve::testing;

TEST_CASE("intrinsic residual: Theorem-family circles solve tau_r = 0") {
  for (int r : {2, 3, 4, 5, 7}) {
    const auto circle = make_r_circle<double>(r);
    CHECK(residual_intrinsic(circle, r).max_norm < 1e-8);
  }
}

TEST_CASE("intrinsic residual: great circles solve every order") {
  for (int r : {2, 3, 4}) CHECK(residual_intrinsic(great_circle(), r).max_norm < 1e-10);
}

TEST_CASE("intrinsic residual: wrong frequency is far from a solution") {
  // a^2 = 2 with alpha^2 = 1/2 for r = 3: the polynomial factor a^4 - 4a^2 + 3
  // evaluates to -1, so the residual has magnitude |(-1)| * |V1| = 1
  const auto wrong = single_circle(std::sqrt(2.0), 0.5);
  const auto report = residual_intrinsic(wrong, 3);
  CHECK(report.max_norm > 0.1);
  CHECK(report.max_norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("intrinsic residual rejects r < 2 and non-sphere space forms") {
  CHECK_THROWS_AS(residual_intrinsic(great_circle(), 1), InvalidArgument);
  CHECK_THROWS_AS(residual_intrinsic(great_circle(), 2, SpaceFormd{-1.0, 3}), InvalidArgument);
}

TEST_CASE("biharmonic ODE: the a^2 = 2 circle and the two-frequency family solve it") {
  CHECK(residual_biharmonic_ode(make_r_circle<double>(2)).max_norm < 1e-9);
  for (double a_sq : {0.4, 1.5, 1.9}) {
    const auto built = make_biharmonic_two_freq(std::sqrt(a_sq));
    CHECK(residual_biharmonic_ode(built.curve).max_norm < 1e-8);
  }
}

TEST_CASE("biharmonic ODE: frequencies off the a^2 + b^2 = 2 line fail") {
  const auto off = make_two_freq_unit_speed<double>(1.5, 0.7);  // sums to 2.2
  CHECK(residual_biharmonic_ode(off).max_norm > 1e-2);
}

TEST_CASE("biharmonic lambda estimate equals 2 - |gamma''|^2 = 1 - k^2") {
  for (double a_sq : {1.5, 0.5}) {
    const auto built = make_biharmonic_two_freq(std::sqrt(a_sq));
    const auto report = residual_biharmonic_ode(built.curve);
    REQUIRE(report.lambda_estimate.size() > 0);
    const double k_sq = 1.0 - a_sq * (2.0 - a_sq);
    const double expected = 1.0 - k_sq;
    CHECK((report.lambda_estimate.array() - expected).abs().maxCoeff() < 1e-8);
    // constant along the curve
    CHECK(report.lambda_estimate.maxCoeff() - report.lambda_estimate.minCoeff() < 1e-8);
  }
}

TEST_CASE("triharmonic ODE: the a^2 = 3 circle solves it, great circles too") {
  CHECK(residual_triharmonic_ode(make_r_circle<double>(3)).max_norm < 1e-8);
  CHECK(residual_triharmonic_ode(great_circle()).max_norm < 1e-10);
}

TEST_CASE("triharmonic ODE: the 4-harmonic circle is not triharmonic") {
  // oracle: a^4 - 4 a^2 + 3 at a^2 = 4 equals 3, residual magnitude
  // |a^4-4a^2+3| * sqrt(a^2 - 1) = 3 sqrt(3)
  const auto report = residual_triharmonic_ode(make_r_circle<double>(4));
  CHECK(report.max_norm > 0.1);
  CHECK(report.max_norm == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("4-harmonic ODE: the a^2 = 4 circle solves it, the a^2 = 3 circle does not") {
  CHECK(residual_fourharmonic_ode(make_r_circle<double>(4)).max_norm < 1e-7);
  CHECK(residual_fourharmonic_ode(great_circle()).max_norm < 1e-10);
  // oracle: (a^2 - 4)(a^2 - 1)^2 at a^2 = 3 equals -4, magnitude 4 sqrt(2)
  const auto report = residual_fourharmonic_ode(make_r_circle<double>(3));
  CHECK(report.max_norm > 0.1);
  CHECK(report.max_norm == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("extrinsic residual: great circles solve every order, proper circles do not") {
  for (int r : {2, 3, 4}) CHECK(residual_extrinsic(great_circle(), r).max_norm < 1e-10);
  CHECK(residual_extrinsic(make_r_circle<double>(2), 2).max_norm > 1e-3);
  CHECK_THROWS_AS(residual_extrinsic(great_circle(), 1), InvalidArgument);
  CHECK_THROWS_AS(residual_extrinsic(great_circle(), 5), InvalidArgument);
}

TEST_CASE("extrinsic r=2 residual vanishes exactly when |gamma''|^2 = 1") {
  // on unit-speed sphere curves the r=2 equation reads g4 - |g''|^2 g;
  // for the great circle |g''|^2 = 1 identically
  const auto gc = great_circle();
  const auto stack = derivatives_analytic(gc, 0.9, 4);
  CHECK(stack[2].row(0).squaredNorm() == doctest::Approx(1.0));
  CHECK(residual_extrinsic(gc, 2).max_norm < 1e-12);
}

TEST_CASE("residuals agree between the analytic and spectral pipelines") {
  const auto circle = make_r_circle<double>(3);
  const auto disc = sample(circle, 256);
  CHECK(residual_triharmonic_ode(disc).max_norm < 1e-10);
  CHECK(residual_intrinsic(disc, 3).max_norm < 1e-10);
  const auto off = sample(make_r_circle<double>(4), 256);
  const auto analytic = residual_triharmonic_ode(make_r_circle<double>(4));
  const auto spectral = residual_triharmonic_ode(off);
  CHECK(spectral.max_norm == doctest::Approx(analytic.max_norm).epsilon(1e-8));
}

TEST_CASE("residual reports keep their aggregate invariants") {
  const auto report = residual_triharmonic_ode(make_r_circle<double>(4));
  CHECK(report.max_norm == doctest::Approx(report.per_sample.maxCoeff()));
  const double h = report.s[1] - report.s[0];
  CHECK(report.l2_norm ==
        doctest::Approx(std::sqrt(h * report.per_sample.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("equivalence of formulations across the single-frequency sweep") {
  // intrinsic and extrinsic-ODE residuals vanish together: both tiny or both
  // large over a 50-point sweep of a^2 plus the exact roots
  for (int r : {2, 3, 4}) {
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(0.5 + 4.5 * double(i) / 49.0);
    grid.push_back(double(r));
    for (double a_sq : grid) {
      if (a_sq < 1.0) continue;  // no unit-speed representative below a^2 = 1
      const auto curve = single_circle(std::sqrt(a_sq), 1.0 / a_sq);
      const double intrinsic = residual_intrinsic(curve, r).max_norm;
      double ode = 0;
      if (r == 2) ode = residual_biharmonic_ode(curve).max_norm;
      if (r == 3) ode = residual_triharmonic_ode(curve).max_norm;
      if (r == 4) ode = residual_fourharmonic_ode(curve).max_norm;
      const bool both_small = intrinsic <= 1e-7 && ode <= 1e-7;
      const bool both_large = intrinsic >= 1e-3 && ode >= 1e-3;
      CHECK((both_small || both_large));
    }
  }
}

TEST_CASE("triharmonic conservation constants on the r=3 circle") {
  const auto circle = make_r_circle<double>(3);
  const auto [c1, c2] = conservation_triharmonic(circle);
  CHECK(c1.drift < 1e-8);
  CHECK(c2.drift < 1e-8);
  // Frenet oracle: (k1')^2 + 2 k1 k1'' - k1^4 - k1^2 k2^2 with k1^2 = 2, k2 = 0
  CHECK(c1.values[0] == doctest::Approx(-4.0).epsilon(1e-9));
}

TEST_CASE("conservation laws vanish identically on geodesics") {
  const auto [c1, c2] = conservation_triharmonic(great_circle());
  CHECK(c1.max_abs < 1e-12);
  CHECK(c2.max_abs < 1e-12);
  CHECK(conservation_fourharmonic(great_circle()).max_abs < 1e-12);
}

TEST_CASE("conservation reports are diagnostics, not validators") {
  // a non-triharmonic curve still yields a report
  const auto report = conservation_triharmonic(make_r_circle<double>(2));
  CHECK(report.first.drift >= 0.0);
}

TEST_CASE("integrated 4-harmonic law on the a^2 = 4 and a^2 = 2 circles") {
  CHECK(conservation_fourharmonic(make_r_circle<double>(4)).drift < 1e-7);
  // constants are constant on any constant-curvature circle; oracle value of
  // F = |V3|^2 = beta^2 k^2 with beta = a^2 - 1 = 1, k^2 = 1
  const auto report = conservation_fourharmonic(make_r_circle<double>(2));
  CHECK(report.drift < 1e-7);
  CHECK(report.values[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("equation solutions satisfy the conservation laws") {
  // any curve passing the triharmonic ODE must have both drifts tiny,
  // including the proper two-frequency solutions of the critical system
  std::vector<CircleAnsatzCurved> solutions{make_r_circle<double>(3), great_circle()};
  {
    auto solution = make_two_freq_unit_speed<double>(0.008682364449575037, 2.978303594291925);
    if (residual_triharmonic_ode(solution).max_norm < 1e-7)
      solutions.push_back(std::move(solution));
  }
  for (const auto& curve : solutions) {
    REQUIRE(residual_triharmonic_ode(curve).max_norm <= 1e-7);
    const auto [c1, c2] = conservation_triharmonic(curve);
    CHECK(c1.drift <= 1e-6);
    CHECK(c2.drift <= 1e-6);
  }
}

TEST_CASE("first triharmonic law in differentiated form holds on solutions") {
  // d^3/ds^3 |V1|^2 - d/ds |V2|^2 = 0: evaluate via jets on the r=3 circle
  const auto circle = make_r_circle<double>(3);
  auto [grid, window] = default_grid(circle, 64);
  (void)window;
  double worst = 0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto gamma = curve_jet(circle, grid[i], 8);
    const auto fields = covariant_fields(gamma, 2);
    const auto law =
        dot(fields[1], fields[1]).derivative(3) - dot(fields[2], fields[2]).derivative(1);
    worst = std::max(worst, std::abs(law.value()));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("conjecture probe: zero exactly on alpha^2 + beta^2 = 5") {
  const auto on_circle = conjecture_probe(1.0, 2.0, 1.0, 10.0);
  CHECK(on_circle.max_abs < 1e-12);
  // alpha = beta = 1: value alpha^2 (5 - alpha^2 - beta^2) / s^4 = 3 / s^4
  const auto off_circle = conjecture_probe(1.0, 1.0, 1.0, 10.0);
  CHECK(off_circle.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(off_circle.max_abs == doctest::Approx(3.0).epsilon(1e-12));
  const auto geodesic_limit = conjecture_probe(0.0, 0.7, 1.0, 10.0);
  CHECK(geodesic_limit.max_abs < 1e-15);
  CHECK_THROWS_AS(conjecture_probe(1.0, 1.0, -1.0, 10.0), InvalidArgument);
}

TEST_CASE("unit-speed precondition is enforced") {
  const auto slow = single_circle(1.0, 0.25);  // speed 1/2
  CHECK_THROWS_AS(residual_biharmonic_ode(slow), InvalidArgument);
  CHECK_THROWS_AS(conservation_fourharmonic(slow), InvalidArgument);
}
