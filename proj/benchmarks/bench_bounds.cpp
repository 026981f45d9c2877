#include "kronbound/kronbound.hpp"

#include <benchmark/benchmark.h>

using namespace kronbound;

namespace {

KroneckerProblem scaled_problem(Preset p, int n) {
    return KroneckerProblem::from_matrix(scale_by_diagonal(make_preset(p, n)));
}

void BM_IntegralTable(benchmark::State& state) {
    const auto problem = scaled_problem(Preset::FdLaplacian, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(IntegralBoundTable::build(problem, {}, 1));
}
BENCHMARK(BM_IntegralTable)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SingleIntegralBound(benchmark::State& state) {
    const auto problem = scaled_problem(Preset::Legendre, 10);
    const auto sep = classify_distances(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integral_entry_bound(problem.spectrum, sep, 1));
}
BENCHMARK(BM_SingleIntegralBound)->Arg(1)->Arg(5)->Arg(9);

void BM_CholeskyAndColumn(benchmark::State& state) {
    const auto m = scale_by_diagonal(make_preset(Preset::NinePoint, static_cast<int>(state.range(0))));
    const auto s = assemble_kronecker_sum(m, m);
    for (auto _ : state) {
        const auto factor = cholesky(s);
        benchmark::DoNotOptimize(inverse_column(factor, 1));
    }
}
BENCHMARK(BM_CholeskyAndColumn)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ColumnReport(benchmark::State& state) {
    const auto problem = scaled_problem(Preset::DiagonallyDominant, 10);
    const auto table = IntegralBoundTable::build(problem, {});
    for (auto _ : state) benchmark::DoNotOptimize(column_report(problem, table, 55));
}
BENCHMARK(BM_ColumnReport);

} // namespace

BENCHMARK_MAIN();
