#include <benchmark/benchmark.h>

#include "penosc/crossing.hpp"
#include "penosc/lyapunov.hpp"
#include "penosc/pde.hpp"
#include "penosc/rng.hpp"
#include "penosc/simulate.hpp"

using namespace penosc;

namespace {

ModelSpec spec_with_noise(int noise) {
    ModelSpec s;
    if (noise == 1) {
        s.noise = OverdampedNoise::ornstein_uhlenbeck(1.0);
    } else if (noise == 2) {
        s.noise = HamiltonianNoise::kanai_tajimi(1.0, 1.0);
    }
    return s;
}

void BM_EmStep(benchmark::State& st) {
    const auto spec = spec_with_noise(static_cast<int>(st.range(0)));
    State z(spec.dimension());
    NormalStream rng(1);
    for (auto _ : st) {
        z = em_step(spec, z, 1e-3, rng());
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_EmStep)->Arg(0)->Arg(1)->Arg(2);

void BM_ReducedKernel(benchmark::State& st) {
    const ReducedFriction k;
    NormalStream rng(2);
    double y = 0.0;
    const double sq = std::sqrt(1e-3);
    for (auto _ : st) {
        y = k.step(y, 1e-3, sq * rng());
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_ReducedKernel);

void BM_Thomas(benchmark::State& st) {
    Grid1D g;
    g.N = st.range(0);
    const auto op = build_operator(g, PenalizationLevel(100));
    std::vector<double> rhs(static_cast<std::size_t>(g.N), 1.0);
    for (auto _ : st) {
        auto x = solve_tridiagonal(op, rhs);
        benchmark::DoNotOptimize(x.data());
    }
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Thomas)->RangeMultiplier(10)->Range(201, 20001)->Complexity(benchmark::oN);

void BM_WStar(benchmark::State& st) {
    double T = 0.01;
    for (auto _ : st) {
        benchmark::DoNotOptimize(w_star(1.0, T).probability);
        T = T > 10.0 ? 0.01 : T * 1.1;
    }
}
BENCHMARK(BM_WStar);

void BM_CertifyDrift(benchmark::State& st) {
    const auto spec = spec_with_noise(static_cast<int>(st.range(0)));
    const auto c = select_constants(spec);
    const auto grid = DriftGrid::cube(spec.dimension(), -10.0, 10.0, static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) {
        const auto r = certify_drift(c, spec, grid);
        benchmark::DoNotOptimize(r.sup_value);
    }
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * grid.size()));
}
BENCHMARK(BM_CertifyDrift)->Args({0, 201})->Args({1, 41})->Args({2, 21})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
