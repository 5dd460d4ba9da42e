/* vim: set sw=4 sts=4 et : */

#include <embedlab/class_operators.hh>
#include <embedlab/classifier.hh>
#include <embedlab/combinators.hh>
#include <embedlab/equivalence_to_order.hh>
#include <embedlab/experiments.hh>
#include <embedlab/forcing.hh>
#include <embedlab/monotonicity.hh>
#include <embedlab/order_to_equivalence.hh>
#include <embedlab/run_log.hh>

#include <benchmark/benchmark.h>

#include <numeric>

using namespace embedlab;

namespace
{
    auto chain(std::size_t n) -> FiniteDiagram
    {
        std::vector<Element> order(n);
        std::iota(order.begin(), order.end(), 0);
        return chain_diagram(order);
    }

    auto bm_replicate(benchmark::State & state)
    {
        auto op = replicate(3);
        auto alpha = chain(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate(*op, alpha, 16));
    }

    auto bm_interval_fill(benchmark::State & state)
    {
        auto op = interval_fill(replicate(2), FillStyle::LeftClosed);
        auto alpha = chain(8);
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate(*op, alpha, state.range(0)));
    }

    auto bm_ord2eq(benchmark::State & state)
    {
        auto op = ord2eq();
        auto alpha = chain(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate(*op, alpha, 32));
    }

    auto bm_eq2ord(benchmark::State & state)
    {
        auto op = eq2ord_v1();
        auto alpha = partition_diagram({ { 0, 1, 2 }, { 3, 4 }, { 5, 6, 7 }, { 8 } });
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate(*op, alpha, state.range(0)));
    }

    auto bm_pair_formula2eq(benchmark::State & state)
    {
        auto op = pair_formula2eq(least_element_sentence(), greatest_element_sentence());
        auto alpha = chain(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate(*op, alpha, 8));
    }

    auto bm_monotonicity(benchmark::State & state)
    {
        auto op = replicate(2);
        for (auto _ : state)
            benchmark::DoNotOptimize(exhaustive_monotonicity(*op, state.range(0), 8));
    }

    auto bm_trichotomy(benchmark::State & state)
    {
        auto op = replicate(2);
        for (auto _ : state)
            benchmark::DoNotOptimize(trichotomy_scan(op, state.range(0), 2, 8));
    }

    auto bm_census(benchmark::State & state)
    {
        std::size_t stages = state.range(0);
        auto log = run(ord2eq(), generate(CanonicalSpec{ Family::OnePlusEta, 1, { } }, stages), stages);
        for (auto _ : state)
            benchmark::DoNotOptimize(census(log, stages / 4));
    }

    auto bm_fingerprint(benchmark::State & state)
    {
        std::size_t stages = state.range(0);
        auto log = run(replicate(2), generate(CanonicalSpec{ Family::OmegaK, 2, { } }, stages), stages);
        for (auto _ : state)
            benchmark::DoNotOptimize(fingerprint(log, 5));
    }
}

BENCHMARK(bm_replicate)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(bm_interval_fill)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(bm_ord2eq)->Arg(8)->Arg(64);
BENCHMARK(bm_eq2ord)->Arg(16)->Arg(32);
BENCHMARK(bm_pair_formula2eq)->Arg(4)->Arg(16);
BENCHMARK(bm_monotonicity)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_trichotomy)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_census)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fingerprint)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
