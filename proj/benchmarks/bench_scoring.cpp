#include <benchmark/benchmark.h>

#include <random>

#include "ringchord/chord_update.hpp"
#include "ringchord/pareto.hpp"
#include "ringchord/rng.hpp"
#include "ringchord/screening.hpp"

using namespace ringchord;

namespace {

WeightedCycle bench_cycle(int n) {
    std::mt19937_64 rng(7);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = uniform_real(rng, 1.0, 100.0);
    return WeightedCycle(n, std::move(c));
}

void BM_Decompose(benchmark::State& state) {
    const auto cycle = bench_cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(SpectralDecomposition::decompose(cycle));
    }
}
BENCHMARK(BM_Decompose)->Arg(64)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ExactGainPerChord(benchmark::State& state) {
    const auto cycle = bench_cycle(200);
    const auto spec = SpectralDecomposition::decompose(cycle);
    const auto chords = admissible_chords(cycle);
    std::size_t i = 0;
    for (auto _ : state) {
        const Chord& c = chords[i++ % chords.size()];
        benchmark::DoNotOptimize(exact_gain(spec, c.p, c.q, 100.0));
    }
}
BENCHMARK(BM_ExactGainPerChord);

void BM_LowfreqGainPerChord(benchmark::State& state) {
    const auto cycle = bench_cycle(200);
    const auto spec = SpectralDecomposition::decompose(cycle, false);
    const auto chords = admissible_chords(cycle);
    std::size_t i = 0;
    for (auto _ : state) {
        const Chord& c = chords[i++ % chords.size()];
        benchmark::DoNotOptimize(lowfreq_gain(spec, c.p, c.q, 100.0, 12));
    }
}
BENCHMARK(BM_LowfreqGainPerChord);

void BM_KirchhoffImprovementPerChord(benchmark::State& state) {
    const auto cycle = bench_cycle(200);
    const auto spec = SpectralDecomposition::decompose(cycle);
    const auto chords = admissible_chords(cycle);
    std::size_t i = 0;
    for (auto _ : state) {
        const Chord& c = chords[i++ % chords.size()];
        benchmark::DoNotOptimize(
            kirchhoff_improvement(spec, ChordCandidate(cycle, c, 100.0)));
    }
}
BENCHMARK(BM_KirchhoffImprovementPerChord);

void BM_Screen(benchmark::State& state) {
    const auto cycle = bench_cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(screen(cycle, 0.1));
    }
}
BENCHMARK(BM_Screen)->Arg(200)->Arg(800)->Unit(benchmark::kMicrosecond);

void BM_ExtractFront(benchmark::State& state) {
    const auto cycle = bench_cycle(200);
    const auto spec = SpectralDecomposition::decompose(cycle);
    auto points = evaluate_objectives(spec, cycle, admissible_chords(cycle), 100.0);
    normalize_objectives(points, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_front(points));
    }
}
BENCHMARK(BM_ExtractFront)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
