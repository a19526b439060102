#include <aoi/moments.hpp>
#include <aoi/optimize.hpp>
#include <aoi/policy.hpp>
#include <aoi/rng.hpp>
#include <aoi/second_order.hpp>
#include <aoi/sim.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_PhiloxDraw(benchmark::State& state) {
    const aoi::SlotStream stream(42, 0, 0);
    std::uint64_t slot = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stream.uniform_at(slot++));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxDraw);

void BM_ActiveVariance(benchmark::State& state) {
    // theta index selects how slowly the covariance series decays
    const double theta = 0.1 * static_cast<double>(state.range(0));
    const aoi::ChainParams params = aoi::params_from_lambda_theta(0.3, theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::active_temporal_variance(params, 7));
    }
}
BENCHMARK(BM_ActiveVariance)->Arg(1)->Arg(5)->Arg(9);

void BM_Objective(benchmark::State& state) {
    const aoi::NetworkConfig config{7, 2, static_cast<int>(state.range(0)), 0.5};
    const aoi::ChainParams params = aoi::one_shot_chain(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::objective(config, params).objective);
    }
}
BENCHMARK(BM_Objective)->Arg(1)->Arg(2);

void BM_LineSearch(benchmark::State& state) {
    const aoi::NetworkConfig config{7, 2, 1, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::optimize_structural(config, 0.01).lambda_star);
    }
}
BENCHMARK(BM_LineSearch);

void BM_GridOracle(benchmark::State& state) {
    const aoi::NetworkConfig config{7, 2, 1, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::grid_search_oracle(config, 0.05).second);
    }
}
BENCHMARK(BM_GridOracle)->Unit(benchmark::kMillisecond);

void BM_SimulateSlots(benchmark::State& state) {
    const aoi::NetworkConfig config{7, 2, 1, 0.5};
    const aoi::PolicySpec policy{aoi::PolicyKind::slotted_aloha,
                                 aoi::params_from_rs(1.0 / 7.0, 6.0 / 7.0)};
    const aoi::SimParams params{static_cast<long long>(state.range(0)), 1, 99, 1000, 1000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::simulate(config, policy, params).empirical_objective);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 14);
}
BENCHMARK(BM_SimulateSlots)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FaulhaberSum(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(aoi::faulhaber_sum(200, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_FaulhaberSum)->Arg(2)->Arg(8);

} // namespace

BENCHMARK_MAIN();
