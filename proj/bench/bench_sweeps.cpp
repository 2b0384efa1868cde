// Serial reference against the OpenMP path for the three grid kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "casimir/dce1d.hpp"
#include "casimir/dce_nd.hpp"
#include "casimir/oracle.hpp"
#include "casimir/parallel.hpp"

using namespace casimir;

namespace {

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_EntropySweep1D(benchmark::State& st) {
    std::vector<double> taus;
    for (int i = 0; i < 600; ++i) taus.push_back(6.0 * i / 599);
    for (auto _ : st) benchmark::DoNotOptimize(dce1d::entropy_sweep(taus, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(taus.size()));
    label(st);
}

void BM_MixedEntropySweep(benchmark::State& st) {
    const auto p = dce_nd::resonance_gamma({{1.0, 1.0}, 0.01});
    std::vector<double> ts;
    for (int i = 0; i < 400; ++i) ts.push_back(2000.0 * i / 399);
    for (auto _ : st) benchmark::DoNotOptimize(dce_nd::mixed_entropy_sweep(p, ts, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(ts.size()));
    label(st);
}

void BM_SubsystemTrials(benchmark::State& st) {
    const auto p = dce_nd::resonance_gamma({{1.0, 1.0}, 0.01});
    const dce_nd::TruncatedFlow flow(p, 4);
    for (auto _ : st) benchmark::DoNotOptimize(dce_nd::random_subsystem_trials(flow, 32, 1, 20.0 / p.rate(), mode(st)));
    label(st);
}

void BM_OracleColumns(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracle::run_resonant_1d(12, 0.01, 4, 1.0, {}, mode(st)));
    label(st);
}

}  // namespace

BENCHMARK(BM_EntropySweep1D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MixedEntropySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsystemTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleColumns)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
