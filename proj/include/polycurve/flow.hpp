#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polycurve/arclength.hpp"
#include "polycurve/circle_ansatz.hpp"
#include "polycurve/discrete_curve.hpp"
#include "polycurve/energy.hpp"
#include "polycurve/errors.hpp"
#include "polycurve/tolerances.hpp"
#include "polycurve/types.hpp"

namespace polycurve {

enum class FlowMode {
  /// Projected gradient descent on the discrete r-energy in sample
  /// coordinates. Finds the geodesic minima.
  Full,
  /// Descent on the squared reduced first variation within the one-frequency
  /// ansatz family (frequency tied to the amplitude by arclength). The proper
  /// critical circles are unstable, so plain energy descent cannot reach
  /// them; driving the reduced criticality residual to zero can.
  Restricted,
};

template <typename Scalar>
struct FlowOptions {
  FlowMode mode{FlowMode::Full};
  int max_iters{kFlowMaxIters};
  Scalar gradient_tol{Scalar(kTolFlow)};
  Scalar fd_step{Scalar(1e-6)};
  int reparametrize_every{10};
  bool allow_r4{false};
  Eigen::Index restricted_samples{128};
};

template <typename Scalar>
struct EnergyTraceRow {
  int step{};
  Scalar energy{};
  Scalar constraint_violation{};
  Scalar step_size{};
};

/// Iteration history of a flow run. In full mode `energy` is the discrete
/// r-energy; in restricted mode it is the squared reduced first variation
/// (the line-search objective of that mode). The recorded objective is
/// nonincreasing after the first accepted step in both modes.
template <typename Scalar>
struct EnergyTrace {
  std::vector<EnergyTraceRow<Scalar>> iterations;
  DiscreteCurve<Scalar> final_curve;
  bool converged{false};
  std::string stop_reason;
  Scalar final_gradient_norm{};
  int accepted_steps{};
  // restricted-mode summary
  Scalar final_alpha_sq{};
  Scalar final_a_sq{};
};

using EnergyTraced = EnergyTrace<double>;

namespace detail {

template <typename Scalar>
SampleMatrix<Scalar> normalized_rows(SampleMatrix<Scalar> m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i).normalize();
  return m;
}

/// Energy of the sphere-projected sample set: the objective of the full flow.
template <typename Scalar>
Scalar projected_energy(const SampleMatrix<Scalar>& raw, Scalar period, int r) {
  DiscreteCurve<Scalar> curve{normalized_rows(raw), period};
  return discrete_energy(curve, r);
}

/// Central finite-difference gradient in sample coordinates, projected onto
/// the tangent planes of the sphere.
template <typename Scalar>
SampleMatrix<Scalar> projected_gradient(const SampleMatrix<Scalar>& samples, Scalar period,
                                        int r, Scalar h) {
  SampleMatrix<Scalar> grad(samples.rows(), samples.cols());
  SampleMatrix<Scalar> work = samples;
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    for (Eigen::Index c = 0; c < samples.cols(); ++c) {
      const Scalar saved = work(i, c);
      work(i, c) = saved + h;
      const Scalar plus = projected_energy(work, period, r);
      work(i, c) = saved - h;
      const Scalar minus = projected_energy(work, period, r);
      work(i, c) = saved;
      grad(i, c) = (plus - minus) / (Scalar(2) * h);
    }
  }
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    const auto n = samples.row(i);
    grad.row(i) -= grad.row(i).dot(n) * n;
  }
  return grad;
}

/// Axis-aligned one-frequency ansatz used by the restricted flow; the energy
/// depends only on (a, alpha), not on the axis orientation.
template <typename Scalar>
CircleAnsatzCurve<Scalar> restricted_ansatz(Scalar a, Scalar alpha_sq, Eigen::Index dim) {
  using std::sqrt;
  CircleAnsatzCurve<Scalar> curve;
  curve.constant_axis = AmbientVector<Scalar>::Zero(dim);
  curve.constant_axis[2] = sqrt(Scalar(1) - alpha_sq);
  CircleTerm<Scalar> term;
  term.frequency = a;
  term.cos_axis = AmbientVector<Scalar>::Zero(dim);
  term.sin_axis = AmbientVector<Scalar>::Zero(dim);
  term.cos_axis[0] = sqrt(alpha_sq);
  term.sin_axis[1] = sqrt(alpha_sq);
  curve.terms.push_back(std::move(term));
  return curve;
}

/// Reduced first variation rho(alpha) = dE/dalpha of the sampled discrete
/// energy at fixed frequency a = 1/alpha (the admissible amplitude variation
/// of the ansatz family), by central differences.
template <typename Scalar>
Scalar reduced_first_variation(Scalar alpha, int r, Eigen::Index n_samples, Scalar h) {
  const Scalar a = Scalar(1) / alpha;
  auto energy_at = [&](Scalar al) {
    const auto curve = restricted_ansatz(a, al * al, 4);
    return discrete_energy(sample(curve, n_samples), r);
  };
  return (energy_at(alpha + h) - energy_at(alpha - h)) / (Scalar(2) * h);
}

template <typename Scalar>
EnergyTrace<Scalar> gradient_flow_restricted(const DiscreteCurve<Scalar>& initial, int r,
                                             const FlowOptions<Scalar>& options) {
  using std::abs;
  using std::sqrt;
  // Recover (a, alpha) of the ansatz: the mean of the samples is the constant
  // axis and the stored period determines the frequency.
  const AmbientVector<Scalar> mean = initial.samples.colwise().mean().transpose();
  Scalar alpha_sq = Scalar(1) - mean.squaredNorm();
  Scalar alpha = sqrt(std::clamp(alpha_sq, Scalar(1e-4), Scalar(1) - Scalar(1e-8)));
  const Eigen::Index n_samples = options.restricted_samples;
  const Scalar h = Scalar(1e-5);       // step of the reduced first-variation difference
  const Scalar h_outer = Scalar(1e-4); // step of the merit-gradient difference

  auto rho = [&](Scalar al) { return reduced_first_variation(al, r, n_samples, h); };
  auto merit = [&](Scalar al) {
    const Scalar value = rho(al);
    return Scalar(0.5) * value * value;
  };

  EnergyTrace<Scalar> trace;
  Scalar phi = merit(alpha);
  trace.iterations.push_back({0, phi, Scalar(0), Scalar(0)});

  const Scalar lo = Scalar(0.05), hi = Scalar(0.999);
  int step = 0;
  while (step < options.max_iters) {
    const Scalar rho_here = rho(alpha);
    trace.final_gradient_norm = abs(rho_here);
    if (abs(rho_here) <= options.gradient_tol) {
      trace.converged = true;
      trace.stop_reason = "reduced first variation below tolerance";
      break;
    }
    // phi' = rho * rho'; differencing rho directly keeps the direction clean
    // arbitrarily close to the root, where differences of phi cancel.
    const Scalar drho = (rho(alpha + h_outer) - rho(alpha - h_outer)) / (Scalar(2) * h_outer);
    const Scalar dphi = rho_here * drho;
    if (abs(dphi) <= Scalar(1e-14)) {
      trace.stop_reason = "merit gradient vanished away from a critical point";
      break;
    }
    const Scalar direction = dphi > Scalar(0) ? Scalar(-1) : Scalar(1);
    Scalar t = std::min(Scalar(0.05), phi / abs(dphi));
    bool accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      const Scalar candidate = std::clamp(alpha + direction * t, lo, hi);
      const Scalar phi_new = merit(candidate);
      if (phi_new <= phi - Scalar(kArmijoSlope) * t * abs(dphi)) {
        const Scalar a_old = Scalar(1) / alpha;
        alpha = candidate;
        phi = phi_new;
        ++step;
        // arclength recoupling a = 1/alpha plays the role of the periodic
        // reparametrization of the full flow
        const Scalar violation = abs(a_old * a_old * alpha * alpha - Scalar(1));
        trace.iterations.push_back({step, phi, violation, t});
        accepted = true;
        break;
      }
      t *= Scalar(kArmijoBacktrack);
    }
    if (!accepted) {
      trace.stop_reason = "line search stalled";
      break;
    }
  }
  if (trace.stop_reason.empty()) trace.stop_reason = "max iterations reached";

  trace.accepted_steps = step;
  trace.final_alpha_sq = alpha * alpha;
  trace.final_a_sq = Scalar(1) / (alpha * alpha);
  trace.final_curve =
      sample(restricted_ansatz(Scalar(1) / alpha, alpha * alpha, initial.dim()), n_samples);
  return trace;
}

template <typename Scalar>
EnergyTrace<Scalar> gradient_flow_full(const DiscreteCurve<Scalar>& initial, int r,
                                       const FlowOptions<Scalar>& options) {
  using std::abs;
  DiscreteCurve<Scalar> curve = project_to_sphere(initial);
  EnergyTrace<Scalar> trace;
  Scalar energy = discrete_energy(curve, r);
  trace.iterations.push_back({0, energy, Scalar(0), Scalar(0)});

  Scalar t_init(1);
  int accepted = 0;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    const SampleMatrix<Scalar> grad =
        projected_gradient(curve.samples, curve.period, r, options.fd_step);
    const Scalar grad_norm = grad.template lpNorm<Eigen::Infinity>();
    trace.final_gradient_norm = grad_norm;
    if (grad_norm <= options.gradient_tol) {
      trace.converged = true;
      trace.stop_reason = "projected gradient below tolerance";
      break;
    }
    const Scalar slope = grad.squaredNorm();
    Scalar t = t_init;
    bool step_accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      SampleMatrix<Scalar> raw = curve.samples - t * grad;
      Scalar violation(0);
      for (Eigen::Index i = 0; i < raw.rows(); ++i)
        violation = std::max(violation, abs(raw.row(i).norm() - Scalar(1)));
      const SampleMatrix<Scalar> candidate = normalized_rows(raw);
      DiscreteCurve<Scalar> trial{candidate, curve.period};
      const Scalar energy_new = discrete_energy(trial, r);
      if (energy_new <= energy - Scalar(kArmijoSlope) * t * slope) {
        curve = trial;
        energy = energy_new;
        ++accepted;
        trace.iterations.push_back({accepted, energy, violation, t});
        t_init = std::min(t * Scalar(2), Scalar(1));
        step_accepted = true;
        break;
      }
      t *= Scalar(kArmijoBacktrack);
    }
    if (!step_accepted) {
      trace.stop_reason = "line search stalled";
      break;
    }
    if (options.reparametrize_every > 0 && accepted % options.reparametrize_every == 0) {
      DiscreteCurve<Scalar> reparametrized = arclength_reparametrize(curve);
      const Scalar energy_reparam = discrete_energy(reparametrized, r);
      // keep the recorded objective monotone: defer reparametrization when it
      // would raise the energy
      if (energy_reparam <= energy) {
        curve = std::move(reparametrized);
        energy = energy_reparam;
      }
    }
  }
  if (trace.stop_reason.empty()) trace.stop_reason = "max iterations reached";

  trace.accepted_steps = accepted;
  trace.final_curve = std::move(curve);
  return trace;
}

}  // namespace detail

/// Constrained descent from the initial curve. See FlowMode for the two
/// regimes; the trace records the objective of the selected mode.
template <typename Scalar>
EnergyTrace<Scalar> gradient_flow(const DiscreteCurve<Scalar>& initial, int r,
                                  const FlowOptions<Scalar>& options = {}) {
  if (r < 2) throw InvalidArgument("flow orders start at r = 2");
  if (r > 4) throw InvalidArgument("flow orders beyond r = 4 are not supported");
  if (r == 4) {
    // 8th-derivative budget of the finite-difference gradient; accuracy is
    // marginal below this resolution
    const Eigen::Index n = options.mode == FlowMode::Restricted
                               ? options.restricted_samples
                               : initial.sample_count();
    if (!options.allow_r4 || n < 512)
      throw InvalidArgument("r = 4 flow must be enabled explicitly and needs N >= 512");
  }
  if (options.mode == FlowMode::Restricted)
    return detail::gradient_flow_restricted(initial, r, options);
  return detail::gradient_flow_full(initial, r, options);
}

}  // namespace polycurve
