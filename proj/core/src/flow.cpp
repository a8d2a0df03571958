#include "hymlab/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hymlab {

namespace {

EndField flow_rhs(const BundleSpec& spec, const EndField& h) {
  auto mc = mean_curvature(spec, h);
  EndField phi = std::move(mc.theta);
  for (int j = 0; j < spec.rank; ++j)
    for (auto& v : phi.at(j, j)) v -= spec.lambda;
  EndField k = mul(h, phi);
  scale_in_place(k, -2.0);
  return k;
}

// Exact positive-definiteness scan.  Blocks of size 1 and 2 use closed
// forms; larger blocks factor pointwise.
bool positive_definite(const EndField& h) {
  for (const auto& [o, s] : h.mask.blocks) {
    if (s == 1) {
      for (const cplx& v : h.at(o, o))
        if (!(v.real() > 0.0)) return false;
    } else if (s == 2) {
      const Plane& a = h.at(o, o);
      const Plane& b = h.at(o, o + 1);
      const Plane& d = h.at(o + 1, o + 1);
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (!(a[p].real() > 0.0)) return false;
        if (!(a[p].real() * d[p].real() - std::norm(b[p]) > 0.0)) return false;
      }
    } else {
      Eigen::MatrixXcd m(s, s);
      for (std::size_t p = 0; p < h.grid.npoints; ++p) {
        for (int j = 0; j < s; ++j)
          for (int k = 0; k < s; ++k) m(j, k) = h.at(o + j, o + k)[p];
        Eigen::LLT<Eigen::MatrixXcd> llt(m);
        if (llt.info() != Eigen::Success) return false;
      }
    }
  }
  return true;
}

void check_positive(const FlowState& st) {
  if (positive_definite(st.h)) return;
  std::size_t where = 0;
  const double ev = min_eigenvalue(st.h, &where);
  throw NumericalError("flow: metric lost positivity at t = " +
                       std::to_string(st.t) + ", smallest eigenvalue " +
                       std::to_string(ev) + " at grid point " +
                       std::to_string(where));
}

void step_euler(FlowState& st, double dt) {
  EndField k1 = flow_rhs(*st.spec, st.h);
  add_in_place(st.h, k1, dt);
  hermitize_in_place(st.h);
}

void step_rk4(FlowState& st, double dt) {
  const BundleSpec& spec = *st.spec;
  EndField k1 = flow_rhs(spec, st.h);
  EndField y = add(st.h, k1, 1.0, 0.5 * dt);
  hermitize_in_place(y);
  EndField k2 = flow_rhs(spec, y);
  y = add(st.h, k2, 1.0, 0.5 * dt);
  hermitize_in_place(y);
  EndField k3 = flow_rhs(spec, y);
  y = add(st.h, k3, 1.0, dt);
  hermitize_in_place(y);
  EndField k4 = flow_rhs(spec, y);

  add_in_place(k1, k2, 2.0);
  add_in_place(k1, k3, 2.0);
  add_in_place(k1, k4, 1.0);
  add_in_place(st.h, k1, dt / 6.0);
  hermitize_in_place(st.h);
}

double stability_cap(const HermitianBase& base, double safety) {
  const double dx = 1.0 / base.grid.n;
  return safety * dx * dx / base.max_ginv_spec;
}

}  // namespace

FlowState make_flow_state(const SpecPtr& spec, EndField h0) {
  MetricField m = MetricField::make(*spec, std::move(h0), MetricMode::Relative);
  FlowState st;
  st.spec = spec;
  st.t = 0.0;
  st.h = std::move(m.m);
  return st;
}

double cfl_dt(const HermitianBase& base, double safety) {
  if (safety <= 0.0)
    throw ValidationError("cfl_dt: safety factor must be positive");
  return stability_cap(base, safety) / base.n();
}

void flow_step(FlowState& st, double dt, Scheme scheme) {
  if (!(dt > 0.0)) throw ValidationError("flow_step: dt must be positive");
  switch (scheme) {
    case Scheme::Euler:
      step_euler(st, dt);
      break;
    case Scheme::RK4:
      step_rk4(st, dt);
      break;
    case Scheme::AdaptiveRK:
      throw ValidationError("flow_step: adaptive stepping is driven by run_flow");
  }
  st.t += dt;
  check_positive(st);
}

FlowTrace run_flow(FlowState& st, const IntegratorConfig& cfg, double sample_dt,
                   const MonitorOptions& mopts, const FlowObserver& observer) {
  const BundleSpec& spec = *st.spec;
  const HermitianBase& base = *spec.base;
  if (cfg.t_end < st.t)
    throw ValidationError("run_flow: t_end precedes the state time");

  const double cap = stability_cap(base, cfg.safety);
  double dt = cfg.dt;
  if (dt <= 0.0) {
    dt = cfl_dt(base, cfg.safety);
  } else if (dt > cap * (1.0 + 1e-12)) {
    throw ValidationError("run_flow: dt " + std::to_string(dt) +
                          " exceeds the stability bound " + std::to_string(cap));
  }

  std::vector<double> targets;
  if (cfg.t_end > st.t + 1e-15) {
    if (sample_dt > 0.0)
      for (double t = st.t + sample_dt; t < cfg.t_end - 1e-12; t += sample_dt)
        targets.push_back(t);
    targets.push_back(cfg.t_end);
  }

  MonitorRefs refs = make_monitor_refs(spec, st.h);
  FlowTrace trace;
  auto sample = [&]() {
    MonitorRecord rec = compute_monitors(spec, st.h, st.t, mopts, &refs);
    if (observer) observer(st, rec);
    trace.samples.push_back(std::move(rec));
  };
  sample();

  const Scheme scheme =
      (cfg.scheme == Scheme::AdaptiveRK) ? Scheme::AdaptiveRK : cfg.scheme;
  double dt_try = dt;
  for (double target : targets) {
    while (st.t < target - 1e-12) {
      if (scheme == Scheme::AdaptiveRK) {
        const double span = std::min(dt_try, target - st.t);
        FlowState full = st;
        step_rk4(full, span);
        FlowState half = st;
        step_rk4(half, 0.5 * span);
        step_rk4(half, 0.5 * span);
        const double err =
            sup_frobenius(add(full.h, half.h, 1.0, -1.0)) / 15.0;
        const double tol_eff =
            cfg.tolerance * std::max(1.0, sup_frobenius(half.h));
        const double ratio = tol_eff / std::max(err, 1e-300);
        if (err <= tol_eff) {
          st.h = std::move(half.h);
          st.t += span;
          check_positive(st);
          dt_try = std::min(cap, dt_try * std::clamp(0.9 * std::pow(ratio, 0.2),
                                                     0.5, 2.0));
        } else {
          dt_try *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.1, 0.9);
          if (dt_try < 1e-12)
            throw NumericalError(
                "run_flow: adaptive step collapsed below 1e-12 at t = " +
                std::to_string(st.t));
        }
      } else {
        flow_step(st, std::min(dt, target - st.t), scheme);
      }
    }
    st.t = target;
    sample();
  }
  return trace;
}

GaugePair gauge_pair(const FlowState& state, const FlowState& state0) {
  if (state.spec != state0.spec)
    throw ValidationError("gauge_pair: states live on different bundles");
  EndField w = sqrt_hermitian_pd(state0.h);
  EndField winv = inverse(w);
  // m = h0^{-1/2} h h0^{-1/2}; sigma = h0^{-1/2} m^{1/2} h0^{1/2}
  EndField m = mul(winv, mul(state.h, winv));
  hermitize_in_place(m);
  EndField r = sqrt_hermitian_pd(m);
  GaugePair out;
  out.sigma = mul(winv, mul(r, w));
  EndField sigma_inv = mul(winv, mul(inverse(r), w));
  auto mc = mean_curvature(*state.spec, state.h);
  out.theta = mul(out.sigma, mul(mc.theta, sigma_inv));
  return out;
}

PerturbedSolution solve_perturbed(const SpecPtr& spec, double eps, double tol,
                                  int max_iterations) {
  if (eps <= 0.0)
    throw ValidationError("solve_perturbed: eps must be positive");
  if (tol <= 0.0)
    throw ValidationError("solve_perturbed: tolerance must be positive");
  const HermitianBase& base = *spec->base;
  const Grid& g = base.grid;
  const SpectralEngine& fft = *base.fft;
  const auto& lap = fft.laplace_symbol_flat();
  const double scale = 2.0 * std::numbers::pi / base.volume;

  // zero-mode solution: each factor scaled so eps log h cancels theta_K
  EndField s = EndField::zero(g, spec->mask);
  for (int j = 0; j < spec->rank; ++j) {
    const double target = (spec->lambda - scale * spec->degrees[j]) / eps;
    for (auto& v : s.at(j, j)) v = target;
  }

  PerturbedSolution out;
  double best = 1e300;
  for (int it = 0; it <= max_iterations; ++it) {
    EndField h = exp_hermitian(s);
    auto mc = mean_curvature(*spec, h);
    EndField defect = std::move(mc.theta);
    for (int j = 0; j < spec->rank; ++j)
      for (auto& v : defect.at(j, j)) v -= spec->lambda;
    add_in_place(defect, s, eps);

    EndField hinv = inverse(h);
    const double residual =
        std::sqrt(integrate_real(base, hs_norm2_plane(defect, hinv, h)));
    if (residual < tol) {
      out.h = std::move(h);
      out.residual = residual;
      out.iterations = it;
      return out;
    }
    best = std::min(best, residual);
    if (it > 5 && residual > 10.0 * best)
      throw NumericalError("solve_perturbed: diverging, residual " +
                           std::to_string(residual) + " after " +
                           std::to_string(it) + " iterations");
    if (it == max_iterations)
      throw NumericalError("solve_perturbed: no convergence in " +
                           std::to_string(max_iterations) +
                           " iterations, residual " + std::to_string(residual));

    // preconditioned correction: s -= (Laplace + eps)^{-1} defect, modewise
    for (const auto& [o, sz] : spec->mask.blocks)
      for (int j = o; j < o + sz; ++j)
        for (int k = o; k < o + sz; ++k) {
          Plane& plane = defect.at(j, k);
          fft.forward_inplace(plane);
          for (std::size_t p = 0; p < plane.size(); ++p)
            plane[p] /= lap[p] + eps;
          fft.inverse_inplace(plane);
        }
    add_in_place(s, defect, -1.0);
    hermitize_in_place(s);
  }
  return out;  // unreachable
}

}  // namespace hymlab
