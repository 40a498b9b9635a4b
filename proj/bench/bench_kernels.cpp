// Serial reference vs OpenMP kernels: grid classification and grid verification.
// Thread count follows LEH_THREADS / OMP_NUM_THREADS.

#include "leh/classifier.hpp"
#include "leh/construction.hpp"
#include "leh/parallel.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace leh;

const HardyParams kRegimeB(5, -2.0, -2.0);

void classify_grid_serial_ref(benchmark::State& state)
{
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_grid_serial(kRegimeB, {0.1, 8.0}, {0.1, 8.0}, res));
    }
    state.SetItemsProcessed(state.iterations() * res * res);
}

void classify_grid_parallel(benchmark::State& state)
{
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_grid(kRegimeB, {0.1, 8.0}, {0.1, 8.0}, res, Execution::Parallel));
    }
    state.SetItemsProcessed(state.iterations() * res * res);
    state.counters["threads"] = max_threads();
}

struct VerifyFixture {
    ExponentPairPQ pq{2.0, 3.0};
    SupersolutionCandidate candidate = build_candidate(CaseId::C6, kRegimeB, pq);
};

void verify_serial_ref(benchmark::State& state)
{
    const VerifyFixture f;
    const RadialGrid grid = verification_grid(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_on_grid_serial(f.candidate, 0.25, kRegimeB, f.pq, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void verify_parallel(benchmark::State& state)
{
    const VerifyFixture f;
    const RadialGrid grid = verification_grid(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_on_grid(f.candidate, 0.25, kRegimeB, f.pq, grid, Execution::Parallel));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = max_threads();
}

}  // namespace

BENCHMARK(classify_grid_serial_ref)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(classify_grid_parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(verify_serial_ref)->Arg(512)->Arg(8192)->Unit(benchmark::kMicrosecond);
BENCHMARK(verify_parallel)->Arg(512)->Arg(8192)->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv)
{
    leh::apply_thread_limit();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
        return 1;
    }
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
