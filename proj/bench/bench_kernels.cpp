#include "../tests/fixtures.hpp"
#include "locus/bicyclic.hpp"
#include "locus/conv.hpp"
#include "locus/hlrc.hpp"
#include "locus/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace locus;

namespace {

Matrix generator_12_4()
{
    static const Matrix g = generator_matrix(construct(derive_profile({2, 4}, 2, {4}), Field::create(13, 1)).code);
    return g;
}

Matrix tailbiting_pair()
{
    static const Matrix g = tailbiting_generator(fixtures::shifted_pair_code(), 8);
    return g;
}

void BM_min_distance_serial_12_4(benchmark::State& s)
{
    auto g = generator_12_4();
    auto f = Field::create(13, 1);
    for (auto _ : s) benchmark::DoNotOptimize(min_distance_serial(*f, g, 100000000).value);
}

void BM_min_distance_parallel_12_4(benchmark::State& s)
{
    auto g = generator_12_4();
    auto f = Field::create(13, 1);
    for (auto _ : s) benchmark::DoNotOptimize(min_distance(*f, g, 100000000).value);
}

void BM_min_distance_serial_tailbiting(benchmark::State& s)
{
    auto g = tailbiting_pair();
    auto f = Field::create(7, 1);
    for (auto _ : s) benchmark::DoNotOptimize(min_distance_serial(*f, g, 100000000).value);
}

void BM_min_distance_parallel_tailbiting(benchmark::State& s)
{
    auto g = tailbiting_pair();
    auto f = Field::create(7, 1);
    for (auto _ : s) benchmark::DoNotOptimize(min_distance(*f, g, 100000000).value);
}

void BM_column_distance_serial(benchmark::State& s)
{
    auto g = fixtures::shifted_pair_code();
    for (auto _ : s) benchmark::DoNotOptimize(column_distance_serial(g, static_cast<std::uint32_t>(s.range(0)), 100000000).value);
}

void BM_column_distance_parallel(benchmark::State& s)
{
    auto g = fixtures::shifted_pair_code();
    for (auto _ : s) benchmark::DoNotOptimize(column_distance(g, static_cast<std::uint32_t>(s.range(0)), 100000000).value);
}

void BM_availability_serial(benchmark::State& s)
{
    auto c = build_bicyclic(21, 2, 6, 9, Field::create(2, 6));
    auto g = bicyclic_generator(c);
    for (auto _ : s) benchmark::DoNotOptimize(availability_verify_serial(c, g).failures);
}

void BM_availability_parallel(benchmark::State& s)
{
    auto c = build_bicyclic(21, 2, 6, 9, Field::create(2, 6));
    auto g = bicyclic_generator(c);
    for (auto _ : s) benchmark::DoNotOptimize(availability_verify(c, g).failures);
}

} // namespace

BENCHMARK(BM_min_distance_serial_12_4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_distance_parallel_12_4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_distance_serial_tailbiting)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_distance_parallel_tailbiting)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_column_distance_serial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_column_distance_parallel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_availability_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_availability_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
