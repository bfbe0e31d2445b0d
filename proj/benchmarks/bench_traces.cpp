#include "rootbias/bias.hpp"
#include "rootbias/classnum.hpp"
#include "rootbias/trace.hpp"

#include <benchmark/benchmark.h>

using namespace rootbias;

static void BM_HurwitzCold(benchmark::State& state) {
    const auto d = -static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        clear_class_number_cache();
        benchmark::DoNotOptimize(hurwitz(Discriminant(d)));
    }
}
BENCHMARK(BM_HurwitzCold)->Arg(4 * 1001)->Arg(4 * 10007)->Arg(4 * 100003);

static void BM_TraceFullDirect(benchmark::State& state) {
    for (auto _ : state)
        for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(state.range(0)); ++n)
            benchmark::DoNotOptimize(trace_full_direct(n, 24));
}
BENCHMARK(BM_TraceFullDirect)->Arg(1000);

static void BM_TraceFullClosed(benchmark::State& state) {
    for (auto _ : state)
        for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(state.range(0)); ++n)
            benchmark::DoNotOptimize(trace_full_closed(n, 24));
}
BENCHMARK(BM_TraceFullClosed)->Arg(1000);

static void BM_TraceNewClosed(benchmark::State& state) {
    for (auto _ : state)
        for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(state.range(0)); ++n)
            benchmark::DoNotOptimize(trace_new_closed(n, 24));
}
BENCHMARK(BM_TraceNewClosed)->Arg(1000);

static void BM_ScanNegative(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(scan_negative(static_cast<std::uint64_t>(state.range(0)), 50, 1));
}
BENCHMARK(BM_ScanNegative)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
