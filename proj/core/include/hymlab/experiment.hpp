#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hymlab/analytics.hpp"
#include "hymlab/flow.hpp"

namespace hymlab {

struct BaseConfig {
  std::string kind = "flat";  // flat | gauduchon
  int dim = 1;                // complex dimension, gauduchon requires 2
  int grid_n = 32;
  double eps = 0.0;           // gauduchon deformation strength

  bool operator==(const BaseConfig&) const = default;
};

// Constant strictly upper-triangular deformation drawn from the seed,
// supported on equal-degree blocks, scaled to the given amplitude.
struct BetaConfig {
  double amplitude = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const BetaConfig&) const = default;
};

struct BundleConfig {
  std::vector<int> degrees;  // nonincreasing
  std::optional<BetaConfig> beta;

  bool operator==(const BundleConfig&) const = default;
};

// background: h = Id.  conformal-mode: h = e^{phi} Id with a single cosine
// mode.  random: Id plus a seeded band-limited Hermitian perturbation, with
// optional pointwise determinant normalization.
struct InitialMetricConfig {
  std::string kind = "background";  // background | conformal-mode | random
  double amplitude = 0.0;
  std::array<int, 4> mode{0, 0, 0, 0};
  std::uint64_t seed = 0;
  int band = 1;
  bool normalize_det = false;

  bool operator==(const InitialMetricConfig&) const = default;
};

struct MonitorConfig {
  double sample_dt = 0.0;  // 0 records only the endpoints
  std::vector<std::pair<double, double>> hym_pairs{{1.0, 0.0}, {1.0, 1.0},
                                                   {2.0, 0.0}, {2.0, 1.0}};

  bool operator==(const MonitorConfig&) const = default;
};

struct OutputConfig {
  std::string prefix = "trace";
  bool jsonl = true;
  bool csv = true;
  bool svg = false;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  int version = 1;
  BaseConfig base;
  BundleConfig bundle;
  InitialMetricConfig initial_metric;
  // when present, a second flow runs from this metric on the same bundle and
  // pair distances are recorded at the shared sample times
  std::optional<InitialMetricConfig> pair_metric;
  IntegratorConfig integrator;
  MonitorConfig monitors;
  OutputConfig outputs;

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses and validates the JSON text; unknown keys, bad enum strings, and
// unsupported combinations are rejected with a descriptive ValidationError.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// Inverse of parsing: parse(serialize(c)) == c.
std::string serialize_experiment_config(const ExperimentConfig& cfg);

BasePtr build_base(const BaseConfig& cfg);
SpecPtr build_spec(const BaseConfig& base_cfg, const BundleConfig& bundle_cfg);
EndField build_initial_metric(const BundleSpec& spec,
                              const InitialMetricConfig& cfg);

struct ExperimentResult {
  SpecPtr spec;
  FlowTrace trace;
  FlowState state;  // final state of the first run
  std::optional<FlowTrace> trace_b;
  std::optional<FlowState> state_b;
  std::vector<double> pair_t;        // sample times of the pair distances
  std::vector<PairDistance> pair;    // empty without pair_metric
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace hymlab
