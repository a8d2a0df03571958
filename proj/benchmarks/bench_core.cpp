// Microbenchmarks for the kernels that dominate flow runtime: spectral
// derivatives, mean curvature assembly, integrator steps, the pointwise
// eigenvalue field, and Harder-Narasimhan power types.
#include <benchmark/benchmark.h>

#include <cmath>

#include "hymlab/experiment.hpp"
#include "hymlab/fft.hpp"
#include "hymlab/flow.hpp"
#include "hymlab/hn.hpp"

namespace {

using namespace hymlab;

SpecPtr line_spec(int n) {
  return build_spec(BaseConfig{"flat", 1, n, 0.0},
                    BundleConfig{{1, -1}, std::nullopt});
}

SpecPtr gauduchon_spec(int n) {
  return build_spec(BaseConfig{"gauduchon", 2, n, 0.1},
                    BundleConfig{{0, 0}, BetaConfig{0.15, 9}});
}

EndField random_metric(const BundleSpec& spec) {
  InitialMetricConfig m;
  m.kind = "random";
  m.amplitude = 0.2;
  m.seed = 5;
  m.normalize_det = true;
  return build_initial_metric(spec, m);
}

void BM_SpectralDerivative(benchmark::State& state) {
  const Grid g = Grid::create(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  const auto engine = spectral_engine(g);
  Plane in = make_plane(g);
  for (std::size_t p = 0; p < g.npoints; ++p)
    in[p] = {std::cos(2.0 * M_PI * g.coord(static_cast<int>(p % g.n))),
             std::sin(4.0 * M_PI * g.coord(static_cast<int>(p % g.n)))};
  Plane out = make_plane(g);
  for (auto _ : state) {
    engine->derivative(in, out, 0, Deriv::Z);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.npoints));
}
BENCHMARK(BM_SpectralDerivative)->Args({1, 32})->Args({1, 64})->Args({2, 16});

void BM_MeanCurvatureLine(benchmark::State& state) {
  const SpecPtr spec = line_spec(static_cast<int>(state.range(0)));
  const EndField h = random_metric(*spec);
  for (auto _ : state) {
    auto mc = mean_curvature(*spec, h);
    benchmark::DoNotOptimize(mc.theta);
  }
}
BENCHMARK(BM_MeanCurvatureLine)->Arg(32)->Arg(64);

void BM_MeanCurvatureGauduchon(benchmark::State& state) {
  const SpecPtr spec = gauduchon_spec(16);
  const EndField h = random_metric(*spec);
  for (auto _ : state) {
    auto mc = mean_curvature(*spec, h);
    benchmark::DoNotOptimize(mc.theta);
  }
}
BENCHMARK(BM_MeanCurvatureGauduchon);

void BM_FlowStepRK4(benchmark::State& state) {
  const SpecPtr spec = line_spec(static_cast<int>(state.range(0)));
  FlowState st = make_flow_state(spec, random_metric(*spec));
  const double dt = cfl_dt(*spec->base, 0.2);
  for (auto _ : state) {
    flow_step(st, dt, Scheme::RK4);
    benchmark::DoNotOptimize(st.h);
  }
}
BENCHMARK(BM_FlowStepRK4)->Arg(32)->Arg(64);

void BM_EigenField(benchmark::State& state) {
  const SpecPtr spec = line_spec(32);
  const EndField h = random_metric(*spec);
  const EndField theta = mean_curvature(*spec, h).theta;
  for (auto _ : state) {
    EigenField ev = eigen_field(theta, h);
    benchmark::DoNotOptimize(ev);
  }
}
BENCHMARK(BM_EigenField);

void BM_TensorPowerType(benchmark::State& state) {
  const HNType a = sort_tau({3.0, 2.0, 1.5, 0.0, -1.0, -2.5});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    HNType t = tensor_power_type(a, k);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TensorPowerType)->Arg(2)->Arg(4);

void BM_SymPowerType(benchmark::State& state) {
  const HNType a = sort_tau({3.0, 2.0, 1.5, 0.5, 0.0, -1.0, -2.0, -2.5});
  for (auto _ : state) {
    HNType t = sym_power_type(a, 6);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SymPowerType);

}  // namespace

BENCHMARK_MAIN();
