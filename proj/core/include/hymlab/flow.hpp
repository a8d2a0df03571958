#pragma once

#include <functional>
#include <vector>

#include "hymlab/analytics.hpp"
#include "hymlab/bundle.hpp"

namespace hymlab {

enum class Scheme { Euler, RK4, AdaptiveRK };

// Explicit integrator configuration.  dt = 0 selects the parabolic default
// cfl_dt(base, safety); explicit dt values are validated against the
// stability budget safety * dx^2 / sup ||G^{-1}||_2.
struct IntegratorConfig {
  Scheme scheme = Scheme::RK4;
  double dt = 0.0;
  double t_end = 0.0;
  double safety = 0.2;
  double tolerance = 1e-8;  // adaptive per-step sup-norm error target

  bool operator==(const IntegratorConfig&) const = default;
};

struct FlowState {
  SpecPtr spec;
  double t = 0.0;
  EndField h;  // relative metric, Hermitian positive definite in the mask
};

// Validates h0 (shape, mask, Hermiticity, positivity) and wraps it.
FlowState make_flow_state(const SpecPtr& spec, EndField h0);

// Default parabolic step: safety * dx^2 / (dim_c * sup ||G^{-1}||_2).  The
// dim_c divisor allocates the diffusion budget across complex axes.
double cfl_dt(const HermitianBase& base, double safety);

// One explicit step of dh/dt = -2 h (theta_H - lambda).  Stage states are
// re-Hermitized; positivity loss after the update raises NumericalError
// carrying the smallest eigenvalue and its location.  Scheme must be Euler
// or RK4; adaptive stepping is driven by run_flow.
void flow_step(FlowState& st, double dt, Scheme scheme);

struct FlowTrace {
  std::vector<MonitorRecord> samples;
};

using FlowObserver = std::function<void(const FlowState&, const MonitorRecord&)>;

// Integrates st to cfg.t_end, recording monitors every sample_dt time units
// plus the initial and final states (sample_dt <= 0 records only those two).
// Conservation references are frozen from the initial state.  Deterministic:
// the step sequence depends only on cfg and the initial state.
FlowTrace run_flow(FlowState& st, const IntegratorConfig& cfg, double sample_dt,
                   const MonitorOptions& mopts = {},
                   const FlowObserver& observer = {});

// Gauge factor between two metrics on one bundle: the H0-positive square
// root of h0^{-1} h (so sigma^{*H0} sigma = h0^{-1} h), plus the conjugated
// mean curvature sigma theta_H sigma^{-1}, which is the mean curvature of
// the gauge-transported connection and is H0-self-adjoint.
struct GaugePair {
  EndField sigma;
  EndField theta;
};
GaugePair gauge_pair(const FlowState& state, const FlowState& state0);

// Stationary point of the damped flow:  theta_H - lambda + eps log h = 0.
// Starts from the per-factor zero-mode solution and contracts the residual
// with a spectral (Laplace + eps)^{-1} preconditioner; pure split bundles
// converge immediately.  Residual is the L2(H) norm of the defect.
struct PerturbedSolution {
  EndField h;
  double residual = 0.0;
  int iterations = 0;
};
PerturbedSolution solve_perturbed(const SpecPtr& spec, double eps, double tol,
                                  int max_iterations = 200);

}  // namespace hymlab
