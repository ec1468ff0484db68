#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatlab/field.hpp"
#include "heatlab/heat.hpp"
#include "heatlab/sine_transform.hpp"
#include "heatlab/synthesis.hpp"

using namespace heatlab;

namespace {

GridFunction sine(std::size_t n) {
    return GridFunction::sample(n, [](double x) { return std::sin(std::numbers::pi * x); });
}

void BM_Dst1(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> in(n, 1.0), out(n);
    for (auto _ : state) {
        dst1(in.data(), out.data(), n);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}
// n + 1 a power of two is the size the solvers use
BENCHMARK(BM_Dst1)->Arg(255)->Arg(1023)->Arg(4095)->Arg(16383)->Complexity();

void BM_ProjectEvaluate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const GridFunction f = sine(n);
    for (auto _ : state) {
        const SineSeries s = project_to_sine(f, static_cast<int>(n) - 2);
        benchmark::DoNotOptimize(evaluate_series(s, n));
    }
}
BENCHMARK(BM_ProjectEvaluate)->Arg(1025)->Arg(16385);

// 100 CN steps, constant reaction on part of the domain.
void BM_CnSteps(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const GridFunction y0 = sine(n);
    const std::vector<ReactionWindow> w{{0.0, 0.01, -10.0, Interval(0.0, 0.4)}};
    CnOptions o;
    o.snapshot_cap = 2;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_multiplicative(y0, w, 0.01, 1e-4, o).final);
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_CnSteps)->Arg(513)->Arg(4097);

void BM_AdditiveFinal(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const auto n = static_cast<std::size_t>(K + 2);
    const GridFunction prof = GridFunction::sample(n, [](double x) { return x * (1.0 - x); });
    std::vector<SourceWindow> ws;
    for (int j = 0; j < 8; ++j) ws.push_back({0.1 * j, 0.1 * j + 0.05, prof, Interval(0.0, 1.0), 1.0});
    for (auto _ : state) benchmark::DoNotOptimize(evolve_additive_final(SineSeries::zeros(K), ws, 1.0));
}
BENCHMARK(BM_AdditiveFinal)->Arg(255)->Arg(4095);

void BM_PredictPulseError(benchmark::State& state) {
    std::vector<double> a(256);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = 1.0 / double((k + 1) * (k + 1));
    const SineSeries t(a);
    for (auto _ : state) benchmark::DoNotOptimize(predict_pulse_error(t, 1e-3, PulseVariant::plain));
}
BENCHMARK(BM_PredictPulseError);

}  // namespace

BENCHMARK_MAIN();
