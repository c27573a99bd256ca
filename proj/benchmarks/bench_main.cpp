#include <benchmark/benchmark.h>

#include <cmath>

#include "hadml/count_dist.hpp"
#include "hadml/hadamard.hpp"
#include "hadml/special.hpp"
#include "hadml/verify.hpp"

using namespace hadml;

static void BM_AlphaMl(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(alpha_ml({1.5, 0.8, 1.2}, z).value);
}
BENCHMARK(BM_AlphaMl)->Arg(1)->Arg(10)->Arg(100);

static void BM_MittagLefflerNegative(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(1.5, 0.7, -5.0).value);
}
BENCHMARK(BM_MittagLefflerNegative);

static void BM_GcomNormalizer(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gcom_normalizer({0.3, 1.5, t}).value);
}
BENCHMARK(BM_GcomNormalizer)->Arg(1)->Arg(10)->Arg(50);

static void BM_QuadratureBuild(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(HadamardQuadrature(0.7, QuadratureSpec::for_decay_rate(1.0)));
    }
}
BENCHMARK(BM_QuadratureBuild);

static void BM_QuadratureIntegrate(benchmark::State& state) {
    const HadamardQuadrature q(0.7, QuadratureSpec::for_decay_rate(1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(q.integrate([](double x) { return x; }, 2.0).value);
    }
}
BENCHMARK(BM_QuadratureIntegrate);

static void BM_Sample(benchmark::State& state) {
    const CountDistribution d(CountModel::gcom(0.3, 1.5, 2.0));
    for (auto _ : state) {
        UniformStream stream(1);
        benchmark::DoNotOptimize(d.sample(static_cast<std::size_t>(state.range(0)), stream));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

static void BM_Moments(benchmark::State& state) {
    const CountDistribution d(CountModel::com_poisson(0.5, 2.0));
    for (auto _ : state) benchmark::DoNotOptimize(d.moments().variance);
}
BENCHMARK(BM_Moments);

static void BM_VerifyAll(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& id : known_checks()) benchmark::DoNotOptimize(run_default_check(id).passed());
    }
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
