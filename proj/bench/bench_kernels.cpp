// bench_kernels.cpp — Serial reference vs OpenMP kernels: coefficient tables and stationary sweeps.

#include "dqd/kernels.hpp"
#include "dqd/model.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace dqd;

EnvParams biased_env() {
    EnvParams env;
    env.mu_l = 1000.0;
    env.mu_r = -1000.0;
    return env;
}

// Table over [0, horizon] at the default grid spacing; range(0) is the horizon in units of 1e-3.
std::vector<double> table_grid(const benchmark::State& state, const EigenBasis& b, const EnvParams& env) {
    return table_times(1e-3 * static_cast<double>(state.range(0)), table_spacing(b, env));
}

template <auto Tabulate>
void BM_TabulateRates(benchmark::State& state) {
    const EnvParams env = biased_env();
    const EigenBasis b = diagonalize({108.0, 32.0});
    const QuadratureConfig q = quadrature_for(env);
    const auto times = table_grid(state, b, env);
    for (auto _ : state) benchmark::DoNotOptimize(Tabulate(b, env, q, times));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}

template <auto Sweep>
void BM_StationarySweep(benchmark::State& state) {
    EnvParams env;
    env.chi1 = 0.5;
    GammaOverrides g;
    g.gamma1 = 0.1;
    g.gamma4 = 0.1;
    std::vector<double> eps(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = -300.0 + 600.0 * i / (eps.size() - 1);
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(eps, 32.0, env, g));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

constexpr auto kTabSerial = &reference::tabulate_rates;
constexpr auto kTabParallel = static_cast<std::vector<RateSet> (*)(const EigenBasis&, const EnvParams&,
                                                                   const QuadratureConfig&, const std::vector<double>&)>(
    &dqd::tabulate_rates);
constexpr auto kSweepSerial = &reference::stationary_sweep;
constexpr auto kSweepParallel = static_cast<std::vector<double> (*)(const std::vector<double>&, double,
                                                                    const EnvParams&, const GammaOverrides&)>(
    &dqd::stationary_sweep);

BENCHMARK(BM_TabulateRates<kTabSerial>)->Name("tabulate_rates/serial")->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TabulateRates<kTabParallel>)->Name("tabulate_rates/openmp")->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_StationarySweep<kSweepSerial>)->Name("stationary_sweep/serial")->Arg(601)->Arg(10001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StationarySweep<kSweepParallel>)->Name("stationary_sweep/openmp")->Arg(601)->Arg(10001)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
