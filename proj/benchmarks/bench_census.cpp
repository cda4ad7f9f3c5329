#include "csa/csa.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_QuaternionCensus(benchmark::State &state) {
    const auto s = csa::build_setup(csa::rational_description(1, 2));
    const csa::BigInt X = csa::big_pow(csa::BigInt(10), static_cast<unsigned long>(state.range(0)));
    for (auto _ : state) {
        auto rows = csa::enumerate_census(*s, {}, {csa::Metric::Disc, X}, false);
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_QuaternionCensus)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_QuaternionCountRam(benchmark::State &state) {
    const auto s = csa::build_setup(csa::rational_description(1, 2));
    const csa::BigInt X = csa::big_pow(csa::BigInt(10), static_cast<unsigned long>(state.range(0)));
    for (auto _ : state) {
        auto t = csa::count_table(*s, {}, csa::Metric::Ram, {X}, {static_cast<unsigned>(state.range(1))});
        benchmark::DoNotOptimize(t.data());
    }
}
BENCHMARK(BM_QuaternionCountRam)->Args({5, 1})->Args({5, 4})->Unit(benchmark::kMillisecond);

void BM_Existence(benchmark::State &state) {
    auto d = csa::quadratic_description(-4, 2, 3);
    const auto s = csa::build_setup(d);
    for (auto _ : state) benchmark::DoNotOptimize(csa::decide_existence(*s, {}, true).exists);
}
BENCHMARK(BM_Existence);

} // namespace
