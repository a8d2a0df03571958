#include "hymlab/experiment.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "hymlab/random_fields.hpp"

namespace hymlab {

namespace {

using ojson = nlohmann::ordered_json;

void check_keys(const ojson& o, std::initializer_list<const char*> allowed,
                const char* ctx) {
  for (const auto& [key, value] : o.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known)
      throw ValidationError(std::string("config: unknown key '") + key +
                            "' in " + ctx);
  }
}

const ojson& require(const ojson& o, const char* key, const char* ctx) {
  auto it = o.find(key);
  if (it == o.end())
    throw ValidationError(std::string("config: missing key '") + key +
                          "' in " + ctx);
  return *it;
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "euler") return Scheme::Euler;
  if (s == "rk4") return Scheme::RK4;
  if (s == "adaptive") return Scheme::AdaptiveRK;
  throw ValidationError("config: unknown scheme '" + s +
                        "' (euler, rk4, adaptive)");
}

std::string scheme_to_string(Scheme s) {
  switch (s) {
    case Scheme::Euler: return "euler";
    case Scheme::RK4: return "rk4";
    case Scheme::AdaptiveRK: return "adaptive";
  }
  return "rk4";
}

InitialMetricConfig parse_initial_metric(const ojson& o, const char* ctx) {
  check_keys(o, {"kind", "amplitude", "mode", "seed", "band", "normalize_det"},
             ctx);
  InitialMetricConfig m;
  m.kind = require(o, "kind", ctx).get<std::string>();
  if (m.kind != "background" && m.kind != "conformal-mode" && m.kind != "random")
    throw ValidationError("config: unknown initial metric kind '" + m.kind +
                          "' (background, conformal-mode, random)");
  m.amplitude = o.value("amplitude", 0.0);
  if (auto it = o.find("mode"); it != o.end()) {
    const auto v = it->get<std::vector<int>>();
    if (v.size() > 4)
      throw ValidationError("config: metric mode takes at most 4 axes");
    for (std::size_t i = 0; i < v.size(); ++i) m.mode[i] = v[i];
  }
  m.seed = o.value("seed", std::uint64_t{0});
  m.band = o.value("band", 1);
  m.normalize_det = o.value("normalize_det", false);
  if (m.kind != "background" && !(m.amplitude > 0.0))
    throw ValidationError(std::string("config: ") + m.kind +
                          " metric needs a positive amplitude");
  if (m.kind == "random" && m.band < 1)
    throw ValidationError("config: random metric band must be at least 1");
  return m;
}

ojson initial_metric_json(const InitialMetricConfig& m) {
  ojson o;
  o["kind"] = m.kind;
  o["amplitude"] = m.amplitude;
  o["mode"] = std::vector<int>(m.mode.begin(), m.mode.end());
  o["seed"] = m.seed;
  o["band"] = m.band;
  o["normalize_det"] = m.normalize_det;
  return o;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ojson root;
  try {
    root = ojson::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }

  try {
    check_keys(root,
               {"version", "base", "bundle", "initial_metric", "pair_metric",
                "integrator", "monitors", "outputs"},
               "config");
    ExperimentConfig cfg;
    cfg.version = require(root, "version", "config").get<int>();
    if (cfg.version != 1)
      throw ValidationError("config: unsupported version " +
                            std::to_string(cfg.version));

    const ojson& b = require(root, "base", "config");
    check_keys(b, {"kind", "dim", "grid_n", "eps"}, "base");
    cfg.base.kind = require(b, "kind", "base").get<std::string>();
    cfg.base.dim = b.value("dim", cfg.base.kind == "gauduchon" ? 2 : 1);
    cfg.base.grid_n = require(b, "grid_n", "base").get<int>();
    cfg.base.eps = b.value("eps", 0.0);
    if (cfg.base.kind == "flat") {
      if (cfg.base.eps != 0.0)
        throw ValidationError("config: flat base takes no eps");
    } else if (cfg.base.kind == "gauduchon") {
      if (cfg.base.dim != 2)
        throw ValidationError("config: gauduchon base requires dim 2");
    } else {
      throw ValidationError("config: unknown base kind '" + cfg.base.kind +
                            "' (flat, gauduchon)");
    }

    const ojson& bu = require(root, "bundle", "config");
    check_keys(bu, {"degrees", "beta"}, "bundle");
    cfg.bundle.degrees = require(bu, "degrees", "bundle").get<std::vector<int>>();
    if (auto it = bu.find("beta"); it != bu.end()) {
      check_keys(*it, {"amplitude", "seed"}, "beta");
      BetaConfig beta;
      beta.amplitude = require(*it, "amplitude", "beta").get<double>();
      beta.seed = it->value("seed", std::uint64_t{0});
      if (!(beta.amplitude > 0.0))
        throw ValidationError("config: beta amplitude must be positive");
      cfg.bundle.beta = beta;
    }

    cfg.initial_metric = parse_initial_metric(
        require(root, "initial_metric", "config"), "initial_metric");
    if (auto it = root.find("pair_metric"); it != root.end())
      cfg.pair_metric = parse_initial_metric(*it, "pair_metric");

    const ojson& in = require(root, "integrator", "config");
    check_keys(in, {"scheme", "dt", "t_end", "safety", "tolerance"},
               "integrator");
    cfg.integrator.scheme =
        scheme_from_string(require(in, "scheme", "integrator").get<std::string>());
    cfg.integrator.dt = in.value("dt", 0.0);
    cfg.integrator.t_end = require(in, "t_end", "integrator").get<double>();
    cfg.integrator.safety = in.value("safety", 0.2);
    cfg.integrator.tolerance = in.value("tolerance", 1e-8);
    if (cfg.integrator.t_end < 0.0)
      throw ValidationError("config: t_end must be nonnegative");
    if (cfg.integrator.dt < 0.0)
      throw ValidationError("config: dt must be nonnegative");

    if (auto it = root.find("monitors"); it != root.end()) {
      check_keys(*it, {"sample_dt", "hym_pairs"}, "monitors");
      cfg.monitors.sample_dt = it->value("sample_dt", 0.0);
      if (cfg.monitors.sample_dt < 0.0)
        throw ValidationError("config: sample_dt must be nonnegative");
      if (auto hp = it->find("hym_pairs"); hp != it->end()) {
        cfg.monitors.hym_pairs.clear();
        for (const auto& pair : *hp) {
          if (!pair.is_array() || pair.size() != 2)
            throw ValidationError("config: hym_pairs entries are [rho, N]");
          cfg.monitors.hym_pairs.emplace_back(pair[0].get<double>(),
                                              pair[1].get<double>());
        }
      }
    }

    if (auto it = root.find("outputs"); it != root.end()) {
      check_keys(*it, {"prefix", "jsonl", "csv", "svg"}, "outputs");
      cfg.outputs.prefix = it->value("prefix", std::string("trace"));
      cfg.outputs.jsonl = it->value("jsonl", true);
      cfg.outputs.csv = it->value("csv", true);
      cfg.outputs.svg = it->value("svg", false);
      if (cfg.outputs.prefix.empty())
        throw ValidationError("config: output prefix must not be empty");
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config type error: ") + e.what());
  }
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  ojson root;
  root["version"] = cfg.version;
  root["base"] = {{"kind", cfg.base.kind},
                  {"dim", cfg.base.dim},
                  {"grid_n", cfg.base.grid_n},
                  {"eps", cfg.base.eps}};
  root["bundle"]["degrees"] = cfg.bundle.degrees;
  if (cfg.bundle.beta)
    root["bundle"]["beta"] = {{"amplitude", cfg.bundle.beta->amplitude},
                              {"seed", cfg.bundle.beta->seed}};
  root["initial_metric"] = initial_metric_json(cfg.initial_metric);
  if (cfg.pair_metric) root["pair_metric"] = initial_metric_json(*cfg.pair_metric);
  root["integrator"] = {{"scheme", scheme_to_string(cfg.integrator.scheme)},
                        {"dt", cfg.integrator.dt},
                        {"t_end", cfg.integrator.t_end},
                        {"safety", cfg.integrator.safety},
                        {"tolerance", cfg.integrator.tolerance}};
  ojson pairs = ojson::array();
  for (const auto& [rho, n] : cfg.monitors.hym_pairs)
    pairs.push_back({rho, n});
  root["monitors"] = {{"sample_dt", cfg.monitors.sample_dt},
                      {"hym_pairs", pairs}};
  root["outputs"] = {{"prefix", cfg.outputs.prefix},
                     {"jsonl", cfg.outputs.jsonl},
                     {"csv", cfg.outputs.csv},
                     {"svg", cfg.outputs.svg}};
  return root.dump(2) + "\n";
}

BasePtr build_base(const BaseConfig& cfg) {
  if (cfg.kind == "flat") return make_flat_torus(cfg.dim, cfg.grid_n);
  return make_gauduchon_torus(cfg.grid_n, cfg.eps);
}

SpecPtr build_spec(const BaseConfig& base_cfg, const BundleConfig& bundle_cfg) {
  BasePtr base = build_base(base_cfg);
  SpecPtr spec = make_split_bundle(base, bundle_cfg.degrees);
  if (!bundle_cfg.beta) return spec;

  const Grid& g = base->grid;
  Rng rng(bundle_cfg.beta->seed);
  EndForm1 beta;
  for (int a = 0; a < g.dim_c; ++a)
    beta.comp.push_back(EndField::zero(g, spec->mask));
  bool any = false;
  for (const auto& [o, s] : spec->mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = j + 1; k < o + s; ++k) {
        const cplx v = bundle_cfg.beta->amplitude * rng.normal_complex() *
                       std::numbers::sqrt2 / 2.0;
        for (auto& w : beta.comp[0].at(j, k)) w = v;
        any = true;
      }
  if (!any)
    throw ValidationError(
        "config: beta requested but every block is a single factor");
  return deform(spec, beta);
}

EndField build_initial_metric(const BundleSpec& spec,
                              const InitialMetricConfig& cfg) {
  const Grid& g = spec.base->grid;
  if (cfg.kind == "background") return EndField::identity(g, spec.mask);

  if (cfg.kind == "conformal-mode") {
    for (int a = g.naxes; a < 4; ++a)
      if (cfg.mode[a] != 0)
        throw ValidationError("config: metric mode uses axis " +
                              std::to_string(a) + " beyond the base dimension");
    EndField h = EndField::identity(g, spec.mask);
    for (std::size_t p = 0; p < g.npoints; ++p) {
      const auto idx = g.unflatten(p);
      double phase = 0.0;
      for (int a = 0; a < g.naxes; ++a) phase += cfg.mode[a] * g.coord(idx[a]);
      const double f = std::exp(cfg.amplitude *
                                std::cos(2.0 * std::numbers::pi * phase));
      for (int j = 0; j < spec.rank; ++j) h.at(j, j)[p] *= f;
    }
    return h;
  }

  // seeded random metric: Id + band-limited Hermitian perturbation per block
  Rng rng(cfg.seed);
  EndField h = EndField::identity(g, spec.mask);
  for (const auto& [o, s] : spec.mask.blocks)
    for (int j = o; j < o + s; ++j) {
      Plane d = band_limited_real(g, rng, cfg.band, cfg.amplitude);
      for (std::size_t p = 0; p < g.npoints; ++p) h.at(j, j)[p] += d[p];
      for (int k = j + 1; k < o + s; ++k) {
        Plane re = band_limited_real(g, rng, cfg.band, 0.5 * cfg.amplitude);
        Plane im = band_limited_real(g, rng, cfg.band, 0.5 * cfg.amplitude);
        for (std::size_t p = 0; p < g.npoints; ++p) {
          const cplx v = re[p] + cplx{0.0, 1.0} * im[p];
          h.at(j, k)[p] = v;
          h.at(k, j)[p] = std::conj(v);
        }
      }
    }
  if (cfg.normalize_det) {
    Plane dets = det(h);
    const double inv_r = -1.0 / spec.rank;
    for (std::size_t p = 0; p < g.npoints; ++p) {
      const double f = std::pow(dets[p].real(), inv_r);
      for (int j = 0; j < spec.rank; ++j)
        for (int k = 0; k < spec.rank; ++k)
          if (spec.mask.allows(j, k)) h.at(j, k)[p] *= f;
    }
  }
  return h;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.spec = build_spec(cfg.base, cfg.bundle);

  MonitorOptions mopts;
  mopts.hym_pairs = cfg.monitors.hym_pairs;

  FlowState st_a =
      make_flow_state(result.spec, build_initial_metric(*result.spec,
                                                        cfg.initial_metric));
  if (!cfg.pair_metric) {
    result.trace = run_flow(st_a, cfg.integrator, cfg.monitors.sample_dt, mopts);
    result.state = std::move(st_a);
    return result;
  }

  // paired run: snapshot the first trajectory at the sample times, then
  // stream the second against the stored states
  std::vector<EndField> snapshots;
  result.trace = run_flow(st_a, cfg.integrator, cfg.monitors.sample_dt, mopts,
                          [&](const FlowState& s, const MonitorRecord&) {
                            snapshots.push_back(s.h);
                          });

  FlowState st_b =
      make_flow_state(result.spec, build_initial_metric(*result.spec,
                                                        *cfg.pair_metric));
  std::size_t idx = 0;
  result.trace_b = run_flow(
      st_b, cfg.integrator, cfg.monitors.sample_dt, mopts,
      [&](const FlowState& s, const MonitorRecord& rec) {
        if (idx < snapshots.size()) {
          result.pair_t.push_back(rec.t);
          result.pair.push_back(pair_distance(*result.spec, snapshots[idx], s.h));
          snapshots[idx] = EndField{};
        }
        ++idx;
      });

  result.state = std::move(st_a);
  result.state_b = std::move(st_b);
  return result;
}

}  // namespace hymlab
