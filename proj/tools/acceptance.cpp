#include "acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hymlab/chern.hpp"
#include "hymlab/experiment.hpp"
#include "hymlab/flow.hpp"
#include "hymlab/hn.hpp"
#include "hymlab/rng.hpp"

namespace hymlab::accept {

namespace {

constexpr double kPi = std::numbers::pi;

Check le(std::string id, double measured, double threshold) {
  return {std::move(id), measured, threshold, false, measured <= threshold};
}

Check ge(std::string id, double measured, double threshold) {
  return {std::move(id), measured, threshold, true, measured >= threshold};
}

// largest adjacent increase, 0 for an already nonincreasing sequence
double worst_increase(const std::vector<double>& v) {
  double w = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) w = std::max(w, v[i] - v[i - 1]);
  return w;
}

double worst_decrease(const std::vector<double>& v) {
  double w = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) w = std::max(w, v[i - 1] - v[i]);
  return w;
}

std::vector<double> column(const FlowTrace& trace,
                           double MonitorRecord::* field) {
  std::vector<double> v;
  v.reserve(trace.samples.size());
  for (const auto& rec : trace.samples) v.push_back(rec.*field);
  return v;
}

std::vector<double> column_k(const FlowTrace& trace,
                             std::vector<double> MonitorRecord::* field,
                             std::size_t k) {
  std::vector<double> v;
  v.reserve(trace.samples.size());
  for (const auto& rec : trace.samples) v.push_back((rec.*field)[k]);
  return v;
}

// worst envelope violation over the leading two partial sums: lower families
// must be nondecreasing, upper families nonincreasing
double envelope_violation(const FlowTrace& trace,
                          std::vector<double> MonitorRecord::* lower,
                          std::vector<double> MonitorRecord::* upper) {
  double w = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    w = std::max(w, worst_decrease(column_k(trace, lower, k)));
    w = std::max(w, worst_increase(column_k(trace, upper, k)));
  }
  return w;
}

// ---- shared reference runs -------------------------------------------------

// Split L_1 + L_{-1} over the dim-1 torus, seeded random metric with unit
// determinant, integrated to T = 20 with metric snapshots every 0.5.
struct LineRun {
  SpecPtr spec;
  EndField h0;
  FlowTrace trace;
  FlowState state;
  std::vector<double> snap_t;
  std::vector<EndField> snap_h;
};

const LineRun& line_run() {
  static const LineRun run = [] {
    LineRun r;
    r.spec = build_spec(BaseConfig{"flat", 1, 32, 0.0},
                        BundleConfig{{1, -1}, std::nullopt});
    InitialMetricConfig im;
    im.kind = "random";
    im.amplitude = 0.25;
    im.seed = 2026;
    im.band = 1;
    im.normalize_det = true;
    r.h0 = build_initial_metric(*r.spec, im);

    FlowState st = make_flow_state(r.spec, r.h0);
    IntegratorConfig cfg{Scheme::RK4, 0.0, 20.0, 0.25, 1e-8};
    double next_snap = 0.0;
    r.trace = run_flow(st, cfg, 0.1, {},
                       [&](const FlowState& s, const MonitorRecord& rec) {
                         if (rec.t >= next_snap - 1e-9) {
                           r.snap_t.push_back(rec.t);
                           r.snap_h.push_back(s.h);
                           next_snap += 0.5;
                         }
                       });
    r.state = std::move(st);
    return r;
  }();
  return run;
}

// Pointwise spectrum of the mean curvature of a metric on the line-run bundle.
EigenField spectrum_of(const BundleSpec& spec, const EndField& h) {
  auto mc = mean_curvature(spec, h);
  return eigen_field(mc.theta, h);
}

// ---- suites ----------------------------------------------------------------

SuiteResult suite_monotonicity() {
  SuiteResult out{1, "monotonicity", {}};
  out.checks.push_back(le("line-envelopes",
                          envelope_violation(line_run().trace,
                                             &MonitorRecord::hatLk,
                                             &MonitorRecord::hatUk),
                          1e-7));

  auto spec = build_spec(BaseConfig{"gauduchon", 2, 16, 0.1},
                         BundleConfig{{0, 0}, BetaConfig{0.15, 11}});
  InitialMetricConfig im;
  im.kind = "random";
  im.amplitude = 0.2;
  im.seed = 7;
  im.band = 1;
  im.normalize_det = true;
  FlowState st = make_flow_state(spec, build_initial_metric(*spec, im));
  IntegratorConfig cfg{Scheme::RK4, 0.0, 0.06, 0.25, 1e-8};
  FlowTrace trace = run_flow(st, cfg, 0.004);
  out.checks.push_back(le(
      "gauduchon-envelopes",
      envelope_violation(trace, &MonitorRecord::mLk, &MonitorRecord::mUk),
      1e-7));
  return out;
}

SuiteResult suite_convergence() {
  const LineRun& lr = line_run();
  const HermitianBase& base = *lr.spec->base;
  const double scale = 2.0 * kPi / base.volume;

  EigenField ef = spectrum_of(*lr.spec, lr.state.h);
  Plane q = make_plane(base.grid);
  for (std::size_t p = 0; p < base.grid.npoints; ++p)
    for (int j = 0; j < lr.spec->rank; ++j) {
      const double d = ef.lam[static_cast<std::size_t>(j)][p] -
                       scale * lr.spec->degrees[static_cast<std::size_t>(j)];
      q[p] += d * d;
    }
  const double l2 = std::sqrt(integrate_real(base, q));

  const auto& first = lr.trace.samples.front();
  const auto& last = lr.trace.samples.back();
  const double gap0 = first.hatU - first.mU;
  const double gapT = last.hatU - last.mU;

  SuiteResult out{2, "convergence", {}};
  out.checks.push_back(le("eigen-limit-l2", l2, 1e-3));
  out.checks.push_back(le("sup-mean-gap-ratio", gapT / gap0, 0.1));
  return out;
}

SuiteResult suite_uniqueness() {
  ExperimentConfig cfg;
  cfg.base = {"flat", 1, 32, 0.0};
  cfg.bundle.degrees = {1, -1};
  cfg.initial_metric.kind = "random";
  cfg.initial_metric.amplitude = 0.25;
  cfg.initial_metric.seed = 101;
  cfg.initial_metric.normalize_det = true;
  cfg.pair_metric = cfg.initial_metric;
  cfg.pair_metric->seed = 202;
  cfg.integrator = {Scheme::RK4, 0.0, 5.0, 0.25, 1e-8};
  cfg.monitors.sample_dt = 0.05;

  ExperimentResult res = run_experiment(cfg);
  const double horizon = cfg.integrator.t_end;

  std::vector<double> tail;
  for (std::size_t i = 0; i < res.pair.size(); ++i)
    if (res.pair_t[i] >= 0.5 * horizon) tail.push_back(res.pair[i].theta_L2);

  double cp_excess = 0.0;
  for (const auto& pd : res.pair)
    cp_excess = std::max(cp_excess,
                         pd.cross_penalty - res.pair.front().cross_penalty);

  SuiteResult out{3, "uniqueness", {}};
  out.checks.push_back(le("theta-distance", res.pair.back().theta_L2, 1e-3));
  out.checks.push_back(le("theta-trend", worst_increase(tail), 1e-9));
  out.checks.push_back(le("gauge-bound", cp_excess, 1e-6));
  return out;
}

SuiteResult suite_conservation() {
  const FlowTrace& trace = line_run().trace;
  double det_drift = 0.0, trf_drift = 0.0;
  for (const auto& rec : trace.samples) {
    det_drift = std::max(det_drift, rec.det_drift);
    trf_drift = std::max(trf_drift, rec.trF_drift);
  }
  SuiteResult out{4, "conservation", {}};
  out.checks.push_back(le("det-drift", det_drift, 1e-6));
  out.checks.push_back(le("curvature-trace-drift", trf_drift, 1e-6));
  out.checks.push_back(le("sup-phi-monotone",
                          worst_increase(column(trace, &MonitorRecord::phi_sup_sq)),
                          1e-6));
  return out;
}

SuiteResult suite_energy() {
  const LineRun& lr = line_run();
  FlowState st = make_flow_state(lr.spec, lr.h0);
  IntegratorConfig cfg{Scheme::RK4, 0.0, 2.0, 0.25, 1e-8};
  FlowTrace trace = run_flow(st, cfg, 0.005);

  double trap = 0.0;
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const auto& a = trace.samples[i - 1];
    const auto& b = trace.samples[i];
    trap += 0.5 * (a.grad_energy + b.grad_energy) * (b.t - a.t);
  }
  const double e0 = trace.samples.front().phi_norm_sq;
  const double g0 = trace.samples.front().grad_energy;
  const double gT = trace.samples.back().grad_energy;

  SuiteResult out{5, "energy", {}};
  out.checks.push_back(le("energy-identity", trap, 0.5 * e0 * (1.0 + 1e-4)));
  out.checks.push_back(le("gradient-decay-ratio", gT / g0, 1e-6));
  return out;
}

Eigen::MatrixXcd randn_matrix(Rng& rng, int r) {
  Eigen::MatrixXcd m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = rng.normal_complex();
  return m;
}

SuiteResult suite_eigenvalue_bound() {
  SuiteResult out{6, "eigenvalue-bound", {}};
  Rng rng(777);
  for (int r = 2; r <= 4; ++r) {
    double worst = -1e300;
    for (int trial = 0; trial < 10000; ++trial) {
      Eigen::MatrixXcd b1 = randn_matrix(rng, r), b2 = randn_matrix(rng, r);
      Eigen::MatrixXcd h1 =
          b1 * b1.adjoint() + 0.05 * Eigen::MatrixXcd::Identity(r, r);
      Eigen::MatrixXcd h2 =
          b2 * b2.adjoint() + 0.05 * Eigen::MatrixXcd::Identity(r, r);
      Eigen::MatrixXcd s1 = randn_matrix(rng, r), s2 = randn_matrix(rng, r);
      s1 = (0.5 * (s1 + s1.adjoint())).eval();
      s2 = (0.5 * (s2 + s2.adjoint())).eval();
      Eigen::MatrixXcd t1 = h1.llt().solve(s1), t2 = h2.llt().solve(s2);

      auto l1 = selfadjoint_spectrum(t1, h1);
      auto l2 = selfadjoint_spectrum(t2, h2);
      double lhs = 0.0;
      for (int j = 0; j < r; ++j) {
        const double d = l2[static_cast<std::size_t>(j)] -
                         l1[static_cast<std::size_t>(j)];
        lhs += d * d;
      }
      const double rhs = sigma_condition(h1, h2) * endo_dist2(t1, t2, h1);
      worst = std::max(worst, (lhs - rhs) / std::max(1.0, rhs));
    }
    out.checks.push_back(le("estek-r" + std::to_string(r), worst, 1e-12));
  }
  return out;
}

// all nonincreasing integer slope vectors of length r with entries in
// [-2, 2], appended to `types`
void enumerate_types(int r, int hi, std::vector<double>& cur,
                     std::vector<HNType>& types) {
  if (static_cast<int>(cur.size()) == r) {
    types.push_back(HNType{cur});
    return;
  }
  for (int v = hi; v >= -2; --v) {
    cur.push_back(v);
    enumerate_types(r, v, cur, types);
    cur.pop_back();
  }
}

HNType brute_tensor_power(const HNType& a, int k) {
  const int r = a.rank();
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  std::vector<double> sums;
  while (true) {
    double s = 0.0;
    for (int i : idx) s += a.mu[static_cast<std::size_t>(i)];
    sums.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == r)
      idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return sort_tau(std::move(sums));
}

void brute_monotone_tuples(const HNType& a, int k, bool strict, int start,
                           double acc, std::vector<double>& sums) {
  if (k == 0) {
    sums.push_back(acc);
    return;
  }
  for (int i = start; i < a.rank(); ++i)
    brute_monotone_tuples(a, k - 1, strict, strict ? i + 1 : i,
                          acc + a.mu[static_cast<std::size_t>(i)], sums);
}

SuiteResult suite_hn_algebra() {
  std::vector<HNType> types;
  std::vector<double> cur;
  for (int r = 1; r <= 5; ++r) enumerate_types(r, 2, cur, types);

  int mismatches = 0;
  double sym_dev = 0.0, ext_dev = 0.0;
  for (const HNType& a : types)
    for (int k = 1; k <= 4; ++k) {
      if (tensor_power_type(a, k) != brute_tensor_power(a, k)) ++mismatches;

      std::vector<double> sums;
      brute_monotone_tuples(a, k, false, 0, 0.0, sums);
      HNType sym = sym_power_type(a, k);
      if (sym != sort_tau(std::move(sums))) ++mismatches;
      sym_dev = std::max(sym_dev, std::abs(sym.bottom() - k * a.bottom()));

      if (k <= a.rank()) {
        std::vector<double> esums;
        brute_monotone_tuples(a, k, true, 0, 0.0, esums);
        HNType ext = ext_power_type(a, k);
        if (ext != sort_tau(std::move(esums))) ++mismatches;
        double top = 0.0;
        for (int i = 0; i < k; ++i) top += a.mu[static_cast<std::size_t>(i)];
        ext_dev = std::max(ext_dev, std::abs(ext.top() - top));
      }
    }

  double tensor_dev = 0.0;
  for (const HNType& a : types) {
    if (a.rank() > 3) continue;
    for (const HNType& b : types) {
      if (b.rank() > 3) continue;
      HNType t = tensor_type(a, b);
      tensor_dev = std::max(tensor_dev, std::abs(t.top() - (a.top() + b.top())));
      tensor_dev =
          std::max(tensor_dev, std::abs(t.bottom() - (a.bottom() + b.bottom())));
    }
  }

  Rng rng(424242);
  double tau_excess = -1e300;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = rng.uniform_int(1, 8);
    std::vector<double> u(static_cast<std::size_t>(n)), v(u);
    for (auto& x : u) x = rng.uniform(-3.0, 3.0);
    for (auto& x : v) x = rng.uniform(-3.0, 3.0);
    HNType tu = sort_tau(u), tv = sort_tau(v);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      lhs = std::max(lhs, std::abs(tu.mu[static_cast<std::size_t>(i)] -
                                   tv.mu[static_cast<std::size_t>(i)]));
      rhs = std::max(rhs, std::abs(u[static_cast<std::size_t>(i)] -
                                   v[static_cast<std::size_t>(i)]));
    }
    tau_excess = std::max(tau_excess, lhs - rhs);
  }

  SuiteResult out{7, "hn-algebra", {}};
  out.checks.push_back(le("power-tables", static_cast<double>(mismatches), 0.0));
  out.checks.push_back(le("sym-min-slope", sym_dev, 0.0));
  out.checks.push_back(le("ext-max-slope", ext_dev, 0.0));
  out.checks.push_back(le("tensor-extremes", tensor_dev, 0.0));
  out.checks.push_back(le("tau-lipschitz", tau_excess, 0.0));
  return out;
}

SuiteResult suite_hym_functional() {
  const LineRun& lr = line_run();
  FlowState base_state = make_flow_state(lr.spec, lr.h0);

  const std::pair<double, double> pairs[] = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};
  std::vector<std::vector<double>> series(4);
  for (std::size_t i = 0; i < lr.snap_h.size(); ++i) {
    FlowState snap{lr.spec, lr.snap_t[i], lr.snap_h[i]};
    GaugePair gp = gauge_pair(snap, base_state);
    EigenField ef = eigen_field(gp.theta, lr.h0);
    for (std::size_t q = 0; q < 4; ++q)
      series[q].push_back(
          hym_functional(*lr.spec, ef, pairs[q].first, pairs[q].second));
  }

  SuiteResult out{8, "hym-functional", {}};
  for (std::size_t q = 0; q < 4; ++q) {
    const auto& [rho, bigN] = pairs[q];
    out.checks.push_back(
        le("hym-rho" + std::to_string(static_cast<int>(rho)) + "-N" +
               std::to_string(static_cast<int>(bigN)),
           worst_increase(series[q]), 1e-6));
  }
  return out;
}

SuiteResult suite_perturbed() {
  auto spec = build_spec(BaseConfig{"flat", 1, 32, 0.0},
                         BundleConfig{{1, -1}, std::nullopt});
  const double eps_list[] = {0.2, 0.1, 0.05};
  double max_res = 0.0;
  std::vector<double> dist;
  for (double eps : eps_list) {
    PerturbedSolution sol = solve_perturbed(spec, eps, 1e-10, 400);
    max_res = std::max(max_res, sol.residual);
    dist.push_back(hn_projection_distance(*spec, sol.h));
  }
  SuiteResult out{9, "perturbed", {}};
  out.checks.push_back(le("residuals", max_res, 1e-8));
  out.checks.push_back(le("epsilon-monotone", worst_increase(dist), 1e-12));
  return out;
}

SuiteResult suite_pinching() {
  const LineRun& lr = line_run();
  const double delta = 0.1;
  const double scale = 2.0 * kPi / lr.spec->base->volume;
  HNType type = hn_type_of_spec(*lr.spec);

  EigenField ef = spectrum_of(*lr.spec, lr.state.h);
  const std::size_t top = 0;
  const std::size_t bot = static_cast<std::size_t>(lr.spec->rank) - 1;
  double upper_viol = -1e300, lower_viol = -1e300;
  for (std::size_t p = 0; p < ef.grid.npoints; ++p) {
    upper_viol = std::max(upper_viol,
                          ef.lam[top][p] - (scale * type.top() + delta));
    lower_viol = std::max(lower_viol,
                          (scale * type.bottom() - delta) - ef.lam[bot][p]);
  }

  SuiteResult out{10, "pinching", {}};
  out.checks.push_back(le("upper-bound", upper_viol, 0.0));
  out.checks.push_back(le("lower-bound", lower_viol, 0.0));
  return out;
}

SuiteResult suite_chern() {
  auto spec = build_spec(BaseConfig{"flat", 2, 16, 0.0},
                         BundleConfig{{0, 0}, BetaConfig{0.2, 31}});
  InitialMetricConfig im;
  im.kind = "random";
  im.amplitude = 0.3;
  im.seed = 17;
  im.band = 1;
  EndField h = build_initial_metric(*spec, im);

  Chern2Fields cf = chern2_defect(*spec, h);
  double scale = 0.0, dev = 0.0;
  for (std::size_t p = 0; p < cf.lhs.size(); ++p) {
    scale = std::max(scale,
                     std::abs(cf.f_perp_sq[p]) + std::abs(cf.theta_perp_sq[p]));
    dev = std::max(dev,
                   std::abs(cf.lhs[p] - (cf.f_perp_sq[p] - cf.theta_perp_sq[p])));
  }

  const Grid& g = spec->base->grid;
  EigenField eigs;
  eigs.grid = g;
  eigs.rank = 2;
  eigs.lam.assign(2, std::vector<double>(g.npoints, 0.0));
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const auto idx = g.unflatten(p);
    const double a =
        0.6 * std::abs(std::sin(2.0 * kPi * g.coord(idx[0])) *
                       std::cos(2.0 * kPi * g.coord(idx[2])));
    eigs.lam[0][p] = 1.0 + a;
    eigs.lam[1][p] = 1.0 - a;
  }
  std::vector<double> bound = c2_positivity_bound(eigs);
  double exact_dev = 0.0, floor = 1e300;
  for (std::size_t p = 0; p < bound.size(); ++p) {
    exact_dev = std::max(exact_dev,
                         std::abs(bound[p] - 2.0 * eigs.lam[0][p] * eigs.lam[1][p]));
    floor = std::min(floor, bound[p]);
  }

  SuiteResult out{11, "chern", {}};
  out.checks.push_back(le("defect-relative", dev / scale, 1e-6));
  out.checks.push_back(le("product-exact", exact_dev, 0.0));
  out.checks.push_back(ge("positivity-floor", floor, 1e-12));
  return out;
}

SuiteResult suite_substrate() {
  SuiteResult out{12, "substrate", {}};

  BasePtr gb = make_gauduchon_torus(16, 0.1);
  out.checks.push_back(le("gauduchon-residual", gb->gauduchon_defect, 1e-10));

  // (2,1)-torsion of omega: d omega restricted to dz^0 wedge dz^1 wedge dzbar^k
  double torsion = 0.0;
  for (int k = 0; k < 2; ++k) {
    Plane d0 = make_plane(gb->grid), d1 = make_plane(gb->grid);
    gb->fft->derivative(gb->g_at(1, k), d0, 0, Deriv::Z);
    gb->fft->derivative(gb->g_at(0, k), d1, 1, Deriv::Z);
    for (std::size_t p = 0; p < gb->grid.npoints; ++p)
      torsion = std::max(torsion, std::abs(d0[p] - d1[p]));
  }
  out.checks.push_back(ge("domega-nonzero", torsion, 1e-3));

  // twisted line bundle heat kernel against the exact Fourier decay
  BasePtr flat = make_flat_torus(1, 32);
  auto spec = make_split_bundle(flat, {1});
  const Grid& g = flat->grid;
  Plane phi0 = make_plane(g);
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const auto idx = g.unflatten(p);
    phi0[p] = 0.1 * std::cos(2.0 * kPi * 2.0 * g.coord(idx[0]));
  }
  EndField h = EndField::identity(g, spec->mask);
  for (std::size_t p = 0; p < g.npoints; ++p)
    h.at(0, 0)[p] = std::exp(phi0[p].real());
  FlowState st = make_flow_state(spec, std::move(h));
  const double dt = cfl_dt(*flat, 0.2);
  IntegratorConfig cfg{Scheme::RK4, dt, 100.0 * dt, 0.2, 1e-8};
  run_flow(st, cfg, 0.0);
  const double rate = flat->fft->laplace_symbol_flat()[2 * 32 + 0];
  double heat_dev = 0.0;
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const double expect = phi0[p].real() * std::exp(-2.0 * rate * st.t);
    heat_dev = std::max(heat_dev,
                        std::abs(std::log(st.h.at(0, 0)[p].real()) - expect));
  }
  out.checks.push_back(le("heat-kernel", heat_dev, 1e-6));

  // flux quantization across bundles, bases, and metrics
  double deg_dev = 0.0;
  auto probe = [&deg_dev](const SpecPtr& s, const InitialMetricConfig& m) {
    EndField hh = build_initial_metric(*s, m);
    deg_dev = std::max(deg_dev,
                       std::abs(degree(*s, hh) - s->degree_sum));
  };
  InitialMetricConfig bg;
  InitialMetricConfig rnd;
  rnd.kind = "random";
  rnd.amplitude = 0.3;
  rnd.seed = 5;
  rnd.band = 2;
  InitialMetricConfig conf;
  conf.kind = "conformal-mode";
  conf.amplitude = 0.2;
  conf.mode = {1, 0, 0, 0};

  auto s11 = build_spec(BaseConfig{"flat", 1, 32, 0.0},
                        BundleConfig{{1, -1}, std::nullopt});
  probe(s11, bg);
  probe(s11, rnd);
  probe(s11, conf);
  probe(build_spec(BaseConfig{"flat", 1, 32, 0.0},
                   BundleConfig{{2}, std::nullopt}),
        rnd);
  probe(build_spec(BaseConfig{"flat", 1, 32, 0.0},
                   BundleConfig{{3, 1}, std::nullopt}),
        rnd);
  probe(build_spec(BaseConfig{"flat", 2, 16, 0.0},
                   BundleConfig{{0, 0}, BetaConfig{0.2, 9}}),
        rnd);
  probe(build_spec(BaseConfig{"gauduchon", 2, 16, 0.1},
                   BundleConfig{{0, 0}, BetaConfig{0.15, 13}}),
        rnd);
  out.checks.push_back(le("degree-independence", deg_dev, 1e-8));
  return out;
}

struct Entry {
  const char* name;
  SuiteResult (*fn)();
};

const Entry kSuites[] = {
    {"monotonicity", suite_monotonicity},
    {"convergence", suite_convergence},
    {"uniqueness", suite_uniqueness},
    {"conservation", suite_conservation},
    {"energy", suite_energy},
    {"eigenvalue-bound", suite_eigenvalue_bound},
    {"hn-algebra", suite_hn_algebra},
    {"hym-functional", suite_hym_functional},
    {"perturbed", suite_perturbed},
    {"pinching", suite_pinching},
    {"chern", suite_chern},
    {"substrate", suite_substrate},
};

}  // namespace

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kSuites) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name) {
  for (const auto& e : kSuites)
    if (name == e.name) return e.fn();
  std::string msg = "unknown suite '" + name + "', available:";
  for (const auto& e : kSuites) msg += std::string(" ") + e.name;
  throw ValidationError(msg);
}

std::vector<SuiteResult> run_all() {
  std::vector<SuiteResult> out;
  for (const auto& e : kSuites) out.push_back(e.fn());
  return out;
}

}  // namespace hymlab::accept
