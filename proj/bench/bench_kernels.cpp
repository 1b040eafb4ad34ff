// Serial reference against the OpenMP kernel for each parallel hot loop.
#include <benchmark/benchmark.h>

#include "siegel/bound_engine.hpp"
#include "siegel/prime_tools.hpp"
#include "siegel/quad_arith.hpp"
#include "siegel/sieve.hpp"

using namespace siegel;

namespace {

const PrimePowerTable& table() {
    static const PrimePowerTable t = PrimePowerTable::build(2300000);
    MertensConstants::standard();  // computing C once takes seconds; keep it out of the timings
    return t;
}

void primes_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sieve::primes_up_to(std::uint64_t(st.range(0))));
}
void primes_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sieve::serial::primes_up_to(std::uint64_t(st.range(0))));
}

void proposition_parallel(benchmark::State& st) {
    const auto& t = table();
    for (auto _ : st) benchmark::DoNotOptimize(verify_proposition(t, MertensConstants::standard()));
}
void proposition_serial(benchmark::State& st) {
    const auto& t = table();
    for (auto _ : st) benchmark::DoNotOptimize(serial::verify_proposition(t, MertensConstants::standard()));
}

void forms_parallel(benchmark::State& st) {
    const FundamentalDiscriminant d(2383747);
    for (auto _ : st) benchmark::DoNotOptimize(reduced_forms(d));
}
void forms_serial(benchmark::State& st) {
    const FundamentalDiscriminant d(2383747);
    for (auto _ : st) benchmark::DoNotOptimize(serial::reduced_forms(d));
}

void scan_parallel(benchmark::State& st) {
    const auto& t = table();
    for (auto _ : st) benchmark::DoNotOptimize(case2_scan(1e-4, t));
}
void scan_serial(benchmark::State& st) {
    const auto& t = table();
    for (auto _ : st) benchmark::DoNotOptimize(serial::case2_scan(1e-4, t));
}

}  // namespace

BENCHMARK(primes_parallel)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(primes_serial)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(proposition_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(proposition_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(forms_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(forms_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(scan_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(scan_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
