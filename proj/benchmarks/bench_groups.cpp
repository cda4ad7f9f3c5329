#include "csa/csa.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SymmetricClosure(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<long>> cycle(1);
    for (std::size_t i = 1; i <= n; ++i) cycle[0].push_back(static_cast<long>(i));
    const std::vector<csa::Permutation> gens{csa::Permutation::from_cycles(n, cycle),
                                             csa::Permutation::from_cycles(n, {{1, 2}})};
    for (auto _ : state) {
        auto g = csa::group_closure(gens, n);
        benchmark::DoNotOptimize(g.classes().size());
    }
}
BENCHMARK(BM_SymmetricClosure)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_InvariantsBundle(benchmark::State &state) {
    const auto g = csa::group_closure({csa::Permutation::parse_cycles(6, "(1 4)(2 5)"),
                                       csa::Permutation::parse_cycles(6, "(1 3 5)(2 4 6)")},
                                      6);
    for (auto _ : state) benchmark::DoNotOptimize(csa::invariants_bundle(g, 2, 1).U);
}
BENCHMARK(BM_InvariantsBundle);

} // namespace
