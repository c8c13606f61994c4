#pragma once

namespace polycurve {

// Numerical policy shared across the library. Values are chosen for double
// precision work with up to 8th order derivatives.

/// On-sphere validation tolerance for curve inputs.
inline constexpr double kTolSphere = 1e-9;

/// Relative speed deviation accepted after arclength reparametrization.
inline constexpr double kTolArc = 1e-6;

/// Below this curvature magnitude the Frenet normal is declared undefined.
inline constexpr double kTolFrenet = 1e-8;

/// Relative tolerance of the curvature-torsion classification check.
inline constexpr double kTolClass = 1e-6;

/// Acceptance tolerance for polynomial roots.
inline constexpr double kTolRoot = 1e-9;

/// Max-norm deduplication radius for algebraic solutions.
inline constexpr double kTolDedup = 1e-6;

/// Projected-gradient max-norm stopping threshold of the gradient flow.
inline constexpr double kTolFlow = 1e-6;

/// Residual max-norm below which a curve counts as a solution
/// (analytic pipeline; the spectral pipeline uses kSolutionTolSpectral).
inline constexpr double kSolutionTolAnalytic = 1e-6;
inline constexpr double kSolutionTolSpectral = 1e-5;

/// Highest plain parameter derivative the derivative engines hand out.
inline constexpr int kMaxDerivativeOrder = 8;

/// Gradient flow defaults.
inline constexpr int kFlowMaxIters = 5000;
inline constexpr double kArmijoSlope = 1e-4;
inline constexpr double kArmijoBacktrack = 0.5;
inline constexpr int kMaxBacktracks = 40;

/// Newton solver defaults.
inline constexpr int kNewtonMaxIters = 200;
inline constexpr int kNewtonMaxHalvings = 40;

}  // namespace polycurve
