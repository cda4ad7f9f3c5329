#include "csa/csa.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_LeadingConstant(benchmark::State &state) {
    const auto s = csa::build_setup(csa::rational_description(1, 2));
    const csa::BigInt pmax(static_cast<unsigned long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(csa::leading_constant(*s, {}, pmax, true).C);
}
BENCHMARK(BM_LeadingConstant)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_EulerFactor(benchmark::State &state) {
    const auto s = csa::build_setup(csa::quadratic_description(-3, 2, 3));
    const auto rec = s->place_record(csa::finite_place(7));
    const csa::Residue chi(csa::BigInt(2), s->M());
    for (auto _ : state) benchmark::DoNotOptimize(csa::euler_factor(*s, 1, chi, rec).size());
}
BENCHMARK(BM_EulerFactor);

void BM_Identity(benchmark::State &state) {
    const auto s = csa::build_setup(csa::rational_description(2, 2));
    csa::LocalConstraint c;
    c.assign(csa::real_place(), csa::Residue(0, 4));
    const csa::BigInt cutoff(static_cast<unsigned long>(state.range(0)));
    const auto method = state.range(1) == 0 ? csa::SumMethod::Direct : csa::SumMethod::Charsum;
    for (auto _ : state) {
        benchmark::DoNotOptimize(csa::dirichlet_partial(*s, c, cutoff, method).terms.size());
    }
}
BENCHMARK(BM_Identity)->Args({30, 0})->Args({30, 1})->Unit(benchmark::kMillisecond);

} // namespace
