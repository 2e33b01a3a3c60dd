// Serial reference against OpenMP kernel, per data-parallel loop.
#include <benchmark/benchmark.h>

#include "ncdual/kernels.hpp"
#include "ncdual/oml.hpp"

namespace {

using namespace ncdual;

std::vector<Matrix> random_basis(int count, int dim)
{
    Rng rng(7);
    std::vector<Matrix> b;
    for (int i = 0; i < count; ++i)
        b.push_back(random_complex(dim, dim, rng));
    return b;
}

void BM_products_serial(benchmark::State& st)
{
    const auto b = random_basis(static_cast<int>(st.range(0)), 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::pairwise_products_serial(b));
}

void BM_products_omp(benchmark::State& st)
{
    const auto b = random_basis(static_cast<int>(st.range(0)), 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::pairwise_products_omp(b));
}

void BM_hs_serial(benchmark::State& st)
{
    const auto b = random_basis(static_cast<int>(st.range(0)), 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::hs_coefficients_serial(b, b));
}

void BM_hs_omp(benchmark::State& st)
{
    const auto b = random_basis(static_cast<int>(st.range(0)), 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::hs_coefficients_omp(b, b));
}

void BM_distributivity_serial(benchmark::State& st)
{
    const FiniteLattice l = boolean_algebra(static_cast<int>(st.range(0)));
    const kernels::LatticeTables t{l.size, l.meet, l.join};
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::distributivity_failures_serial(t));
}

void BM_distributivity_omp(benchmark::State& st)
{
    const FiniteLattice l = boolean_algebra(static_cast<int>(st.range(0)));
    const kernels::LatticeTables t{l.size, l.meet, l.join};
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::distributivity_failures_omp(t));
}

} // namespace

BENCHMARK(BM_products_serial)->Arg(16)->Arg(36);
BENCHMARK(BM_products_omp)->Arg(16)->Arg(36);
BENCHMARK(BM_hs_serial)->Arg(16)->Arg(36);
BENCHMARK(BM_hs_omp)->Arg(16)->Arg(36);
BENCHMARK(BM_distributivity_serial)->Arg(4)->Arg(6);
BENCHMARK(BM_distributivity_omp)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
