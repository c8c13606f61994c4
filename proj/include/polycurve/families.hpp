#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "polycurve/circle_ansatz.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

// ---------------------------------------------------------------------------
// Explicit families
// ---------------------------------------------------------------------------

/// gamma(s) = cos(sqrt(r) s) e1 + sin(sqrt(r) s) e2 + e3 with
/// |e1|^2 = |e2|^2 = 1/r and |e3|^2 = (r-1)/r, axis-aligned in R^{n+1}.
/// Unit speed by construction (a^2 alpha^2 = 1).
template <typename Scalar>
CircleAnsatzCurve<Scalar> make_r_circle(int r, int n = 2) {
  if (r < 2) throw InvalidArgument("r-circle family starts at r = 2");
  if (n < 2) throw InvalidArgument("sphere dimension must be at least 2");
  using std::sqrt;
  const Eigen::Index dim = n + 1;
  CircleAnsatzCurve<Scalar> curve;
  curve.constant_axis = AmbientVector<Scalar>::Zero(dim);
  curve.constant_axis[2] = sqrt(Scalar(r - 1) / Scalar(r));
  CircleTerm<Scalar> term;
  term.frequency = sqrt(Scalar(r));
  term.cos_axis = AmbientVector<Scalar>::Zero(dim);
  term.cos_axis[0] = sqrt(Scalar(1) / Scalar(r));
  term.sin_axis = AmbientVector<Scalar>::Zero(dim);
  term.sin_axis[1] = sqrt(Scalar(1) / Scalar(r));
  curve.terms.push_back(std::move(term));
  curve.validate();
  return curve;
}

/// Two-frequency biharmonic family: frequencies (a, b) with a^2 + b^2 = 2 and
/// all four axis norms 1/2. The pair a^2 = b^2 = 1 collapses to a great
/// circle; it is returned as a flagged single-frequency geodesic instead of
/// failing.
template <typename Scalar>
struct BiharmonicTwoFreq {
  CircleAnsatzCurve<Scalar> curve;
  bool is_geodesic{false};
};

template <typename Scalar>
BiharmonicTwoFreq<Scalar> make_biharmonic_two_freq(Scalar a, int n = 3) {
  using std::abs;
  using std::sqrt;
  const Scalar a_sq = a * a;
  if (!(a_sq > Scalar(0)) || !(a_sq < Scalar(2)))
    throw InvalidArgument("frequency must satisfy 0 < a^2 < 2");
  if (n < 3) throw InvalidArgument("the two-frequency family needs n >= 3");
  const Eigen::Index dim = n + 1;
  const Scalar b = sqrt(Scalar(2) - a_sq);

  BiharmonicTwoFreq<Scalar> out;
  if (abs(a_sq - Scalar(1)) <= Scalar(kTolRoot)) {
    // degenerate pair a = b = 1: the ansatz collapses to a great circle
    out.is_geodesic = true;
    CircleAnsatzCurve<Scalar>& g = out.curve;
    g.constant_axis = AmbientVector<Scalar>::Zero(dim);
    CircleTerm<Scalar> term;
    term.frequency = Scalar(1);
    term.cos_axis = AmbientVector<Scalar>::Zero(dim);
    term.sin_axis = AmbientVector<Scalar>::Zero(dim);
    term.cos_axis[0] = term.cos_axis[2] = sqrt(Scalar(0.5));
    term.sin_axis[1] = term.sin_axis[3] = sqrt(Scalar(0.5));
    g.terms.push_back(std::move(term));
    g.validate();
    return out;
  }

  CircleAnsatzCurve<Scalar>& curve = out.curve;
  curve.constant_axis = AmbientVector<Scalar>::Zero(dim);
  const Scalar half = sqrt(Scalar(0.5));
  CircleTerm<Scalar> first, second;
  first.frequency = a;
  first.cos_axis = AmbientVector<Scalar>::Zero(dim);
  first.sin_axis = AmbientVector<Scalar>::Zero(dim);
  first.cos_axis[0] = half;
  first.sin_axis[1] = half;
  second.frequency = b;
  second.cos_axis = AmbientVector<Scalar>::Zero(dim);
  second.sin_axis = AmbientVector<Scalar>::Zero(dim);
  second.cos_axis[2] = half;
  second.sin_axis[3] = half;
  if (a < b) std::swap(first, second);  // keep frequencies descending for determinism
  curve.terms.push_back(std::move(first));
  curve.terms.push_back(std::move(second));
  curve.validate();
  return out;
}

/// General two-frequency unit-speed ansatz with amplitudes chosen to satisfy
/// a^2 p + b^2 q = 1, p + q = 1. Feasible only when one frequency is >= 1 and
/// the other <= 1 (used by parameter sweeps; off-family points are proper
/// test subjects for the residual operators).
template <typename Scalar>
CircleAnsatzCurve<Scalar> make_two_freq_unit_speed(Scalar a_sq, Scalar b_sq, int n = 3) {
  using std::abs;
  using std::sqrt;
  if (n < 3) throw InvalidArgument("the two-frequency ansatz needs n >= 3");
  if (abs(a_sq - b_sq) <= Scalar(kTolRoot))
    throw InvalidArgument("frequencies must be distinct");
  const Scalar p = (Scalar(1) - b_sq) / (a_sq - b_sq);
  const Scalar q = Scalar(1) - p;
  if (!(p >= Scalar(0)) || !(p <= Scalar(1)))
    throw InvalidArgument("no unit-speed amplitudes exist for this frequency pair");
  const Eigen::Index dim = n + 1;
  CircleAnsatzCurve<Scalar> curve;
  curve.constant_axis = AmbientVector<Scalar>::Zero(dim);
  CircleTerm<Scalar> first, second;
  first.frequency = sqrt(a_sq);
  first.cos_axis = AmbientVector<Scalar>::Zero(dim);
  first.sin_axis = AmbientVector<Scalar>::Zero(dim);
  first.cos_axis[0] = sqrt(p);
  first.sin_axis[1] = sqrt(p);
  second.frequency = sqrt(b_sq);
  second.cos_axis = AmbientVector<Scalar>::Zero(dim);
  second.sin_axis = AmbientVector<Scalar>::Zero(dim);
  second.cos_axis[2] = sqrt(q);
  second.sin_axis[3] = sqrt(q);
  curve.terms.push_back(std::move(first));
  curve.terms.push_back(std::move(second));
  curve.validate();
  return curve;
}

// ---------------------------------------------------------------------------
// Curvature-torsion classification
// ---------------------------------------------------------------------------

/// (k^2 + tau^2)^2 = K ((r-1) k^2 + tau^2)
template <typename Scalar>
struct ClassificationCheck {
  Scalar K{};
  int r{};
  Scalar k{};
  Scalar tau{};
  Scalar lhs{};
  Scalar rhs{};
  bool satisfied{};
};

using ClassificationCheckd = ClassificationCheck<double>;

template <typename Scalar>
ClassificationCheck<Scalar> check_relation(Scalar K, int r, Scalar k, Scalar tau) {
  using std::abs;
  ClassificationCheck<Scalar> out{K, r, k, tau, Scalar(0), Scalar(0), false};
  const Scalar c2 = k * k + tau * tau;
  out.lhs = c2 * c2;
  out.rhs = K * (Scalar(r - 1) * k * k + tau * tau);
  const Scalar scale = std::max({Scalar(1), abs(out.lhs), abs(out.rhs)});
  out.satisfied = abs(out.lhs - out.rhs) <= Scalar(kTolClass) * scale;
  return out;
}

namespace detail {

/// Real roots of a x^2 + b x + c with the citardauq rewrite for stability.
template <typename Scalar>
std::vector<Scalar> quadratic_roots(Scalar a, Scalar b, Scalar c) {
  using std::abs;
  using std::sqrt;
  if (a == Scalar(0)) {
    if (b == Scalar(0)) return {};
    return {-c / b};
  }
  const Scalar disc = b * b - Scalar(4) * a * c;
  const Scalar scale = std::max({Scalar(1), b * b, abs(Scalar(4) * a * c)});
  if (disc < -Scalar(kTolRoot) * scale) return {};
  if (abs(disc) <= Scalar(kTolRoot) * scale) return {-b / (Scalar(2) * a)};
  const Scalar root = sqrt(disc);
  const Scalar q = -(b + (b >= Scalar(0) ? root : -root)) / Scalar(2);
  std::vector<Scalar> out{q / a};
  if (q != Scalar(0)) out.push_back(c / q);
  std::sort(out.begin(), out.end());
  return out;
}

/// Real roots (with multiplicity) of x^3 + b x^2 + c x + d by the closed
/// Cardano cases; the zero-discriminant branch keeps repeated roots exact.
template <typename Scalar>
std::vector<Scalar> cubic_roots(Scalar b, Scalar c, Scalar d) {
  using std::abs;
  using std::acos;
  using std::cbrt;
  using std::cos;
  using std::sqrt;
  const Scalar shift = b / Scalar(3);
  const Scalar p = c - b * b / Scalar(3);
  const Scalar q = Scalar(2) * b * b * b / Scalar(27) - b * c / Scalar(3) + d;
  const Scalar half_q = q / Scalar(2);
  const Scalar third_p = p / Scalar(3);
  const Scalar disc = half_q * half_q + third_p * third_p * third_p;
  const Scalar scale = std::max({Scalar(1), abs(half_q * half_q),
                                 abs(third_p * third_p * third_p)});
  std::vector<Scalar> t;
  if (abs(disc) <= Scalar(kTolRoot) * scale) {
    if (abs(p) <= Scalar(kTolRoot)) {
      t = {Scalar(0), Scalar(0), Scalar(0)};
    } else {
      const Scalar simple = Scalar(3) * q / p;
      const Scalar twin = -Scalar(3) * q / (Scalar(2) * p);
      t = {simple, twin, twin};
    }
  } else if (disc > Scalar(0)) {
    const Scalar s = sqrt(disc);
    t = {cbrt(-half_q + s) + cbrt(-half_q - s)};
  } else {
    const Scalar rho = sqrt(-third_p);
    const Scalar theta = acos(std::clamp(-half_q / (rho * rho * rho), Scalar(-1), Scalar(1)));
    for (int k = 0; k < 3; ++k)
      t.push_back(Scalar(2) * rho * cos((theta + Scalar(2) * Scalar(EIGEN_PI) * Scalar(k)) / Scalar(3)));
  }
  for (auto& root : t) root -= shift;
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace detail

/// Nonnegative roots k^2 of the classification relation at fixed K, r, tau.
/// The relation is quadratic in x = k^2:
///   x^2 + (2 tau^2 - K(r-1)) x + tau^2 (tau^2 - K) = 0.
template <typename Scalar>
std::vector<Scalar> solve_relation_for_k(Scalar K, int r, Scalar tau) {
  const Scalar b = Scalar(2) * tau * tau - K * Scalar(r - 1);
  const Scalar c = tau * tau * (tau * tau - K);
  std::vector<Scalar> out;
  for (Scalar x : detail::quadratic_roots(Scalar(1), b, c)) {
    if (x >= -Scalar(kTolRoot)) out.push_back(std::max(x, Scalar(0)));
  }
  return out;
}

/// One root of the single-frequency critical equation, with its geodesic flag.
template <typename Scalar>
struct PolynomialRoot {
  Scalar a_sq{};
  bool is_geodesic{};
};

/// Frequencies a^2 at which the one-frequency ansatz is r-harmonic. For
/// r = 3 and r = 4 these are the roots of the printed polynomials
/// a^4 - 4a^2 + 3 and (a^2-4)(a^2-1)^2, solved in closed form (the repeated
/// geodesic root of the cubic survives exactly through the zero-discriminant
/// branch). r = 2 and r >= 5 come from the critical points of the reduced
/// Lagrangian, 1 - alpha^2 r = 0 with a^2 alpha^2 = 1.
template <typename Scalar>
std::vector<PolynomialRoot<Scalar>> solve_single_freq_polynomial(int r) {
  if (r < 2) throw InvalidArgument("single-frequency family starts at r = 2");
  using std::abs;
  std::vector<Scalar> roots;
  if (r == 3) {
    roots = detail::quadratic_roots(Scalar(1), Scalar(-4), Scalar(3));
  } else if (r == 4) {
    roots = detail::cubic_roots(Scalar(-6), Scalar(9), Scalar(-4));
  } else {
    for (int i = 0; i < r - 2; ++i) roots.push_back(Scalar(1));
    roots.push_back(Scalar(r));
  }
  std::sort(roots.begin(), roots.end());
  std::vector<PolynomialRoot<Scalar>> out;
  out.reserve(roots.size());
  for (Scalar x : roots)
    out.push_back({x, abs(x - Scalar(1)) <= Scalar(kTolRoot)});
  return out;
}

// ---------------------------------------------------------------------------
// Algebraic systems
// ---------------------------------------------------------------------------

/// Converged critical point of an ansatz system.
template <typename Scalar>
struct AlgebraicSolution {
  std::map<std::string, Scalar> unknowns;
  Scalar residual{};
  bool is_geodesic{};
};

using AlgebraicSolutiond = AlgebraicSolution<double>;

/// Frequency system of the three-frequency biharmonic ansatz:
/// a^2 + b^2 = 2 + eps1, a^2 + c^2 = 2 + eps2, b^2 + c^2 = 2 + eps3.
/// The unperturbed system forces a^2 = b^2 = c^2 = 1, a geodesic.
template <typename Scalar>
AlgebraicSolution<Scalar> solve_biharmonic_three_freq(Scalar eps1 = Scalar(0),
                                                      Scalar eps2 = Scalar(0),
                                                      Scalar eps3 = Scalar(0)) {
  Eigen::Matrix<Scalar, 3, 3> m;
  m << 1, 1, 0, 1, 0, 1, 0, 1, 1;
  Eigen::Matrix<Scalar, 3, 1> rhs(Scalar(2) + eps1, Scalar(2) + eps2, Scalar(2) + eps3);
  const Eigen::Matrix<Scalar, 3, 1> x = m.fullPivLu().solve(rhs);
  AlgebraicSolution<Scalar> out;
  out.unknowns["a_sq"] = x[0];
  out.unknowns["b_sq"] = x[1];
  out.unknowns["c_sq"] = x[2];
  out.residual = (m * x - rhs).template lpNorm<Eigen::Infinity>();
  using std::abs;
  out.is_geodesic = abs(x[0] - Scalar(1)) <= Scalar(kTolRoot) &&
                    abs(x[1] - Scalar(1)) <= Scalar(kTolRoot) &&
                    abs(x[2] - Scalar(1)) <= Scalar(kTolRoot);
  return out;
}

/// Seed for the two-frequency triharmonic system.
template <typename Scalar>
struct TriharmonicSeed {
  Scalar a_sq{}, b_sq{}, alpha1_sq{}, alpha3_sq{}, lambda{};
};

template <typename Scalar>
struct TriharmonicSweepResult {
  std::vector<AlgebraicSolution<Scalar>> solutions;
  int diverged_seeds{};
  int infeasible_seeds{};
};

namespace detail {

/// Residual of the two-frequency triharmonic critical system in the
/// unknowns (u, v, p, q, lambda) = (a^2, b^2, alpha1^2, alpha3^2, lambda):
///   u^3 (1 - 2p) - 2u^2 + 3u - 2 u v^2 q + lambda = 0
///   v^3 (1 - 2q) - 2v^2 + 3v - 2 v u^2 p + lambda = 0
///   u p + v q = 1
///   p + q = 1
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> triharmonic_system(const Eigen::Matrix<Scalar, 5, 1>& x) {
  const Scalar u = x[0], v = x[1], p = x[2], q = x[3], lambda = x[4];
  Eigen::Matrix<Scalar, 4, 1> f;
  f[0] = u * u * u * (Scalar(1) - Scalar(2) * p) - Scalar(2) * u * u + Scalar(3) * u -
         Scalar(2) * u * v * v * q + lambda;
  f[1] = v * v * v * (Scalar(1) - Scalar(2) * q) - Scalar(2) * v * v + Scalar(3) * v -
         Scalar(2) * v * u * u * p + lambda;
  f[2] = u * p + v * q - Scalar(1);
  f[3] = p + q - Scalar(1);
  return f;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 5> triharmonic_jacobian(const Eigen::Matrix<Scalar, 5, 1>& x) {
  const Scalar u = x[0], v = x[1], p = x[2], q = x[3];
  Eigen::Matrix<Scalar, 4, 5> j = Eigen::Matrix<Scalar, 4, 5>::Zero();
  j(0, 0) = Scalar(3) * u * u * (Scalar(1) - Scalar(2) * p) - Scalar(4) * u + Scalar(3) -
            Scalar(2) * v * v * q;
  j(0, 1) = -Scalar(4) * u * v * q;
  j(0, 2) = -Scalar(2) * u * u * u;
  j(0, 3) = -Scalar(2) * u * v * v;
  j(0, 4) = Scalar(1);
  j(1, 0) = -Scalar(4) * u * v * p;
  j(1, 1) = Scalar(3) * v * v * (Scalar(1) - Scalar(2) * q) - Scalar(4) * v + Scalar(3) -
            Scalar(2) * u * u * p;
  j(1, 2) = -Scalar(2) * v * u * u;
  j(1, 3) = -Scalar(2) * v * v * v;
  j(1, 4) = Scalar(1);
  j(2, 0) = p;
  j(2, 1) = q;
  j(2, 2) = u;
  j(2, 3) = v;
  j(3, 2) = Scalar(1);
  j(3, 3) = Scalar(1);
  return j;
}

}  // namespace detail

/// Damped minimum-norm Gauss-Newton sweep over the given seeds. The system is
/// underdetermined (4 equations, 5 unknowns), so each converged seed lands
/// somewhere on the solution set; converged points are deduplicated and
/// flagged geodesic when every frequency that carries amplitude is 1.
/// Diverged or infeasible seeds are counted, never fatal.
template <typename Scalar>
TriharmonicSweepResult<Scalar> solve_triharmonic_two_freq(
    const std::vector<TriharmonicSeed<Scalar>>& seeds) {
  using Vec5 = Eigen::Matrix<Scalar, 5, 1>;
  TriharmonicSweepResult<Scalar> result;
  using std::abs;

  for (const auto& seed : seeds) {
    Vec5 x;
    x << seed.a_sq, seed.b_sq, seed.alpha1_sq, seed.alpha3_sq, seed.lambda;
    bool converged = false;
    Scalar fnorm = detail::triharmonic_system(x).template lpNorm<Eigen::Infinity>();
    for (int it = 0; it < kNewtonMaxIters; ++it) {
      if (fnorm <= Scalar(1e-13)) {
        converged = true;
        break;
      }
      const auto f = detail::triharmonic_system(x);
      const auto j = detail::triharmonic_jacobian(x);
      const Vec5 step = j.completeOrthogonalDecomposition().solve(-f);
      Scalar t(1);
      bool accepted = false;
      for (int h = 0; h < kNewtonMaxHalvings; ++h) {
        const Vec5 trial = x + t * step;
        const Scalar trial_norm =
            detail::triharmonic_system(trial).template lpNorm<Eigen::Infinity>();
        if (trial_norm < fnorm) {
          x = trial;
          fnorm = trial_norm;
          accepted = true;
          break;
        }
        t *= Scalar(0.5);
      }
      if (!accepted) break;
    }
    if (!converged) {
      ++result.diverged_seeds;
      continue;
    }
    // Feasibility: squared quantities must be (numerically) nonnegative and
    // the amplitudes must stay on the simplex.
    Scalar u = x[0], v = x[1], p = x[2], q = x[3];
    const Scalar feas_tol = Scalar(1e-9);
    if (u < -feas_tol || v < -feas_tol || p < -feas_tol || q < -feas_tol ||
        p > Scalar(1) + feas_tol || q > Scalar(1) + feas_tol) {
      ++result.infeasible_seeds;
      continue;
    }
    u = std::max(u, Scalar(0));
    v = std::max(v, Scalar(0));
    p = std::clamp(p, Scalar(0), Scalar(1));
    q = std::clamp(q, Scalar(0), Scalar(1));

    AlgebraicSolution<Scalar> sol;
    sol.unknowns["a_sq"] = u;
    sol.unknowns["b_sq"] = v;
    sol.unknowns["alpha1_sq"] = p;
    sol.unknowns["alpha3_sq"] = q;
    sol.unknowns["lambda"] = x[4];
    sol.residual = fnorm;
    // A frequency with vanishing amplitude does not enter the curve; the
    // configuration is a geodesic when every carried frequency is 1.
    const Scalar amp_tol = Scalar(1e-9);
    const bool a_ok = p <= amp_tol || abs(u - Scalar(1)) <= Scalar(kTolRoot);
    const bool b_ok = q <= amp_tol || abs(v - Scalar(1)) <= Scalar(kTolRoot);
    sol.is_geodesic = a_ok && b_ok;
    result.solutions.push_back(std::move(sol));
  }

  // deterministic order, then max-norm deduplication
  auto key = [](const AlgebraicSolution<Scalar>& s) {
    return std::array<Scalar, 5>{s.unknowns.at("a_sq"), s.unknowns.at("b_sq"),
                                 s.unknowns.at("alpha1_sq"), s.unknowns.at("alpha3_sq"),
                                 s.unknowns.at("lambda")};
  };
  std::sort(result.solutions.begin(), result.solutions.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::vector<AlgebraicSolution<Scalar>> unique;
  for (auto& sol : result.solutions) {
    bool duplicate = false;
    for (const auto& kept : unique) {
      Scalar dist(0);
      const auto ka = key(sol), kb = key(kept);
      for (int i = 0; i < 5; ++i) dist = std::max(dist, abs(ka[i] - kb[i]));
      if (dist <= Scalar(kTolDedup)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) unique.push_back(std::move(sol));
  }
  result.solutions = std::move(unique);
  return result;
}

/// Deterministic seed grid over (0, 6]^2 x simplex for the sweep.
template <typename Scalar>
std::vector<TriharmonicSeed<Scalar>> triharmonic_seed_grid(int freq_axis = 25,
                                                           int simplex_axis = 16) {
  std::vector<TriharmonicSeed<Scalar>> seeds;
  seeds.reserve(static_cast<size_t>(freq_axis) * freq_axis * simplex_axis);
  for (int i = 1; i <= freq_axis; ++i) {
    for (int j = 1; j <= freq_axis; ++j) {
      for (int k = 1; k <= simplex_axis; ++k) {
        TriharmonicSeed<Scalar> seed;
        seed.a_sq = Scalar(6) * Scalar(i) / Scalar(freq_axis);
        seed.b_sq = Scalar(6) * Scalar(j) / Scalar(freq_axis);
        seed.alpha1_sq = Scalar(k) / Scalar(simplex_axis + 1);
        seed.alpha3_sq = Scalar(1) - seed.alpha1_sq;
        seed.lambda = Scalar(0);
        seeds.push_back(seed);
      }
    }
  }
  return seeds;
}

}  // namespace polycurve
