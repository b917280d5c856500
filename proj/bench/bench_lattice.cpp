// Serial reference vs OpenMP lattice kernel. Both produce bit-identical sums.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "twistrt/quantum_inv.hpp"

using namespace twistrt;

namespace {

const SurgeryParams kPQ{6, 27};

void BM_LatticeSerial(benchmark::State& state) {
    RootData root(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rt_lattice_serial(kPQ, root, Precision::double_));
}

void BM_LatticeParallel(benchmark::State& state) {
    RootData root(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(rt_lattice_parallel(kPQ, root, Precision::double_, threads));
    state.counters["threads"] = threads;
}

void BM_LatticeExtended(benchmark::State& state) {
    RootData root(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rt_lattice_serial(kPQ, root, Precision::extended));
}

void BM_Definitional(benchmark::State& state) {
    RootData root(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rt_definitional(kPQ, root));
}

void parallel_args(benchmark::internal::Benchmark* b) {
    const int maxt = omp_get_max_threads();
    for (int r : {101, 201, 301})
        for (int t : {1, 2, 4, 8})
            if (t == 1 || t <= maxt) b->Args({r, t});
}

}  // namespace

BENCHMARK(BM_LatticeSerial)->Arg(101)->Arg(201)->Arg(301)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LatticeExtended)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Definitional)->Arg(21)->Arg(31)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
