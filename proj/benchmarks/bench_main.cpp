#include <benchmark/benchmark.h>

#include <vector>

#include "hurstlab/coeff_expr.hpp"
#include "hurstlab/estimator.hpp"
#include "hurstlab/expansion.hpp"
#include "hurstlab/exponent.hpp"
#include "hurstlab/fbm.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/sde.hpp"

namespace {

using namespace hurstlab;

void BM_series_constants(benchmark::State& state) {
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(series_constants(Hurst(0.7), tol));
}
BENCHMARK(BM_series_constants)->Arg(6)->Arg(8)->Arg(10);

void BM_rho_hat_sweep(benchmark::State& state) {
    const std::int64_t k = state.range(0);
    for (auto _ : state) {
        double acc = 0.0;
        for (std::int64_t j = -k; j <= k; ++j) acc += rho_hat(Hurst(0.7), j);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * (2 * k + 1));
}
BENCHMARK(BM_rho_hat_sweep)->Arg(256)->Arg(4096);

void BM_fgn_sample(benchmark::State& state) {
    const std::int64_t m = state.range(0);
    const FgnMethod method = state.range(1) == 0 ? FgnMethod::circulant : FgnMethod::cholesky;
    const FgnSampler sampler(Hurst(0.7), m, method);
    RngStream rng(1);
    std::vector<double> out(static_cast<std::size_t>(m));
    for (auto _ : state) {
        sampler.sample(rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_fgn_sample)->Args({1024, 0})->Args({16384, 0})->Args({256, 1})->Args({1024, 1});

void BM_euler_solve(benchmark::State& state) {
    const std::int64_t m = state.range(0);
    const CoefficientSpec coeffs = builtin_coefficients("sde1");
    const FgnSampler sampler(Hurst(0.7), m, FgnMethod::circulant);
    RngStream rng(2);
    const FbmPath driver = fbm_path(Hurst(0.7), sampler.sample(rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(euler_solve(coeffs, driver, 1.0));
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_euler_solve)->Arg(1024)->Arg(8192);

void BM_qv2(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const FgnSampler sampler(Hurst(0.7), n, FgnMethod::circulant);
    RngStream rng(3);
    const FbmPath path = fbm_path(Hurst(0.7), sampler.sample(rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(qv2(path.values));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_qv2)->Arg(1024)->Arg(65536);

void BM_exact_l2_norm(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_l2_norm("fig1711", n, Hurst(0.75)));
}
BENCHMARK(BM_exact_l2_norm)->Arg(256)->Arg(1024);

void BM_expr_eval(benchmark::State& state) {
    const ExprPtr e = parse_expression("2+sin(x)*cos(x)-x/3");
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e->eval(x));
        x += 1e-3;
    }
}
BENCHMARK(BM_expr_eval);

void BM_expansion_density(benchmark::State& state) {
    const HurstConstants c = series_constants(Hurst(0.7), 1e-8);
    std::vector<PathFunctionals> samples(500);
    RngStream rng(4);
    for (auto& s : samples) {
        s.g_inf = 2.0 + rng.next_uniform();
        s.a_n = -1.0;
        s.c3 = 0.1;
    }
    std::vector<double> z(401);
    for (int i = 0; i <= 400; ++i) z[static_cast<std::size_t>(i)] = -8.0 + i * 0.04;
    for (auto _ : state)
        benchmark::DoNotOptimize(expansion_density(z, 64, samples, c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(z.size()) *
                            static_cast<std::int64_t>(samples.size()));
}
BENCHMARK(BM_expansion_density);

}  // namespace

BENCHMARK_MAIN();
