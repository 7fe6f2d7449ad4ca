#include <benchmark/benchmark.h>

#include "qkd/pipelines.hpp"
#include "qkd/scenario.hpp"
#include "qkd/twoway.hpp"

namespace {

void BM_CoherentVwRate(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::gys();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::coherent_rate(
            p, qkd::pipelines::CoherentEstimator::VacuumWeak, 0.48, 0.13, 70.0));
    }
}
BENCHMARK(BM_CoherentVwRate);

void BM_CoherentLpRate(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::gys();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::coherent_rate(
            p, qkd::pipelines::CoherentEstimator::Lp, 0.48, 0.1, 70.0));
    }
}
BENCHMARK(BM_CoherentLpRate);

void BM_CoherentOptimized(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::gys();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::coherent_rate_optimized(
            p, qkd::pipelines::CoherentEstimator::VacuumWeak, 0.13, 70.0));
    }
}
BENCHMARK(BM_CoherentOptimized);

void BM_TwoWayBStep(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::gys();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::twoway_rate(
            p, qkd::pipelines::TwoWayScheme::BSteps, 1, 0.5, 150.0));
    }
}
BENCHMARK(BM_TwoWayBStep);

void BM_GlRegionPoint(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::gl_tolerable_region(0.15, 0.15));
    }
}
BENCHMARK(BM_GlRegionPoint);

void BM_TrigRate(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::pdc144();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::trig_rate(
            p, qkd::pipelines::TrigScheme::Ayki, 0.2, 0.0, 0.129, 10.0));
    }
}
BENCHMARK(BM_TrigRate);

void BM_EntRate(benchmark::State& state) {
    const qkd::ExperimentParams p = qkd::presets::pdc144();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkd::pipelines::ent_rate(
            p, qkd::pipelines::EntScheme::OneWay, 0, 0.1, 20.0));
    }
}
BENCHMARK(BM_EntRate);

}  // namespace

BENCHMARK_MAIN();
