#include "qmono/gauge.hpp"
#include "qmono/hopf_lazy.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qmono;

namespace {

const QuadraticIrrational golden = classify(Rat(1, 2), Rat(1, 2), 5);

ContextPtr context(int N) {
    GridSpec g;
    g.N = N;
    return make_context(golden, g);
}

GradedElement packet(ContextPtr ctx, long m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return GradedElement(make_packet(ctx, m, random_packet(rng, ctx->module(m).sectors)));
}

void BM_torus_multiply(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const double th = static_cast<double>(golden.to_long_double());
    const TorusElement x = random_torus(rng, th, static_cast<int>(state.range(0)), 4);
    const TorusElement y = random_torus(rng, th, static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(x, y));
}
BENCHMARK(BM_torus_multiply)->Arg(8)->Arg(64);

void BM_unit_power_data(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(unit_power_data(state.range(0), golden));
}
BENCHMARK(BM_unit_power_data)->Arg(3)->Arg(-6);

void BM_partial(benchmark::State& state) {
    const ContextPtr ctx = context(static_cast<int>(state.range(0)));
    const GradedElement p = packet(ctx, 1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(partial(1, p));
}
BENCHMARK(BM_partial)->Arg(1024)->Arg(4096);

void BM_right_act_V(benchmark::State& state) {
    const ContextPtr ctx = context(static_cast<int>(state.range(0)));
    const HeisenbergElement f = packet(ctx, 2, 3).parts.at(2);
    for (auto _ : state) benchmark::DoNotOptimize(right_act(f, Gen::V));
}
BENCHMARK(BM_right_act_V)->Arg(1024);

void BM_mul_opposite(benchmark::State& state) {
    const ContextPtr ctx = context(1024);
    const GradedElement p = packet(ctx, -1, 4), q = packet(ctx, 1, 5);
    for (auto _ : state) benchmark::DoNotOptimize(mul_P(p, q));
}
BENCHMARK(BM_mul_opposite)->Unit(benchmark::kMillisecond);

void BM_mul_generic(benchmark::State& state) {
    const ContextPtr ctx = context(1024);
    const GradedElement p = packet(ctx, 1, 6), q = packet(ctx, 1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(mul_P(p, q));
}
BENCHMARK(BM_mul_generic)->Unit(benchmark::kMillisecond);

void BM_field_strength(benchmark::State& state) {
    const ContextPtr ctx = context(1024);
    const GradedElement p = packet(ctx, 1, 8);
    for (auto _ : state) benchmark::DoNotOptimize(field_strength({1.0, -0.5}, p));
}
BENCHMARK(BM_field_strength);

void BM_hochschild_solve(benchmark::State& state) {
    const hopf::ModuleAlgebra A = hopf::clock_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hopf::solve_hochschild_space(A));
}
BENCHMARK(BM_hochschild_solve)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_op_gauge(benchmark::State& state) {
    const hopf::ModuleAlgebra A = hopf::clock_instance(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(9);
    const hopf::ConvolutionElement s = hopf::random_unitary_convolution(A, rng);
    for (auto _ : state) benchmark::DoNotOptimize(hopf::op_gauge(A, s));
}
BENCHMARK(BM_op_gauge)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
