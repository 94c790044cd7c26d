// Serial reference kernel against the OpenMP row-parallel kernel.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "elastic/align.hpp"
#include "elastic/verify.hpp"

using namespace elastic;

namespace {

void run(benchmark::State& state, DpKernel kernel) {
    verify::Rng rng(7);
    const Srsf q1 = verify::random_srsf(rng, 1024);
    const Srsf q2 = verify::random_srsf(rng, 1024);
    DpConfig cfg;
    cfg.grid_size = static_cast<int>(state.range(0));
    cfg.kernel = kernel;
    if (state.range(1) > 0) cfg.band_width = static_cast<int>(state.range(1));
    std::int64_t expanded = 0;
    for (auto _ : state) {
        const AlignmentResult r = elastic_distance(q1, q2, cfg);
        benchmark::DoNotOptimize(r.cost);
        expanded = r.nodes_expanded;
    }
    state.counters["nodes"] = static_cast<double>(expanded);
    state.counters["threads"] = kernel == DpKernel::openmp ? omp_get_max_threads() : 1;
}

void BM_Serial(benchmark::State& state) { run(state, DpKernel::serial); }
void BM_OpenMP(benchmark::State& state) { run(state, DpKernel::openmp); }

void lattice_sizes(benchmark::internal::Benchmark* b) {
    for (int M : {64, 128, 256}) b->Args({M, 0});
    b->Args({256, 8});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Serial)->Apply(lattice_sizes);
BENCHMARK(BM_OpenMP)->Apply(lattice_sizes);

BENCHMARK_MAIN();
