#include "kerrlab/geometry.hpp"
#include "kerrlab/multipliers.hpp"
#include "kerrlab/phase_space.hpp"
#include "kerrlab/radial_wave.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace kerrlab;

namespace {

const BlackHoleParams kP = new_params(0.9);

void BM_NormalizedInverse(benchmark::State& st) {
  double r = 1.5;
  for (auto _ : st) {
    benchmark::DoNotOptimize(normalized_inverse(kP, r, 0.9, 3.0, 0.4));
    r = r < 20.0 ? r + 0.01 : 1.5;
  }
}
BENCHMARK(BM_NormalizedInverse);

void BM_CriticalPoints(benchmark::State& st) {
  AdmissibleSampler smp(kP, 1);
  for (auto _ : st) benchmark::DoNotOptimize(critical_points(kP, smp.next()));
}
BENCHMARK(BM_CriticalPoints);

void BM_ClassifyRegimes(benchmark::State& st) {
  const auto s = make_regime_settings(kP, 0.0125, 0.0015);
  AdmissibleSampler smp(kP, 2);
  for (auto _ : st) benchmark::DoNotOptimize(classify_regimes(kP, smp.next().scaled(3.0), s));
}
BENCHMARK(BM_ClassifyRegimes);

void BM_AssembledBulkCurrent(benchmark::State& st) {
  const auto c = default_constants(kP);
  const auto mods = build_mod_functions(kP, c.delta_H, c.delta_BL);
  const auto s = make_regime_settings(kP, 0.0125, 0.0015);
  const FrequencyTriplet xi{0.2, 0.5, 0.9};
  const auto am = assemble_multipliers(kP, s, MultiplierConstants{}, xi);
  PhasePoint pt;
  pt.xi = xi;
  pt.xi_r = 0.3;
  double r = 1.5;
  for (auto _ : st) {
    pt.r = r;
    benchmark::DoNotOptimize(total_bulk_current(kP, mods, am, pt));
    r = r < 20.0 ? r + 0.01 : 1.5;
  }
}
BENCHMARK(BM_AssembledBulkCurrent);

void BM_CertifyBulkCoarse(benchmark::State& st) {
  const auto p = new_params(0.0);
  const auto s = make_regime_settings(p, 0.03125, 0.0);
  MultiplierConstants c;
  c.A = 4.0;
  c.B = 8.0;
  c.c_prime = 0.5;
  c.delta0 = 1.0;
  const CertGrid grid{200, 20, 20, 1, {}, false};
  for (auto _ : st) benchmark::DoNotOptimize(certify_bulk(p, s, c, grid).c_min);
}
BENCHMARK(BM_CertifyBulkCoarse)->Unit(benchmark::kMillisecond);

void BM_ScatteringOracle(benchmark::State& st) {
  const ModeSpec mode{1, std::sqrt(2.0)};
  for (auto _ : st) benchmark::DoNotOptimize(scattering_oracle(kP, mode, 0.4).R2);
}
BENCHMARK(BM_ScatteringOracle)->Unit(benchmark::kMillisecond);

void BM_EvolveStep(benchmark::State& st) {
  const ModeSpec mode{1, std::sqrt(2.0)};
  EvolveOptions o;
  o.grid = {-100.0, 100.0, 0.05, 0.5};
  o.T_final = 0.025 * 100;  // 100 steps
  o.record_every = 1 << 20;
  const auto init = packet_state(kP, o.grid, {});
  for (auto _ : st) benchmark::DoNotOptimize(evolve(kP, mode, init, o).steps);
  st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_EvolveStep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
