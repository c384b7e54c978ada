#include "gromega/grigorchuk.hpp"
#include "gromega/orbit.hpp"
#include "gromega/synthesis.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gromega;

namespace {

const OmegaSeq kPer012 = parse_omega_spec("per:012");

GenWord random_word(std::mt19937_64& rng, std::size_t len) {
    std::uniform_int_distribution<int> pick(0, 3);
    GenWord w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Gen>(pick(rng)));
    return w;
}

void BM_WordProblem(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<GenWord> words;
    for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_trivial(words[i++ % words.size()], kPer012).trivial);
    }
}
BENCHMARK(BM_WordProblem)->Arg(16)->Arg(64);

void BM_Reduce(benchmark::State& state) {
    std::mt19937_64 rng(2);
    GenWord w = random_word(rng, 256);
    for (auto _ : state) benchmark::DoNotOptimize(reduce(w));
}
BENCHMARK(BM_Reduce);

void BM_BallBarycentre(benchmark::State& state) {
    SimplexPoint bary = SimplexPoint::barycentre();
    Rat radius(state.range(0), 3);
    radius.canonicalize();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ball(kPer012, 0, bary, radius, 1'000'000).count());
    }
}
BENCHMARK(BM_BallBarycentre)->Arg(1)->Arg(2)->Arg(3);

void BM_SpectralRadius(benchmark::State& state) {
    std::vector<Letter> word = parse_letter_word("012012012012");
    IntMatrix3 P = matrix_product(word);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(P, 1e-12));
}
BENCHMARK(BM_SpectralRadius);

void BM_HilbertDistance(benchmark::State& state) {
    std::mt19937_64 rng(3);
    SimplexPoint p(Rat(3, 10), Rat(2, 5), Rat(3, 10));
    SimplexPoint q(Rat(1, 3), Rat(1, 3), Rat(1, 3));
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(p, q));
}
BENCHMARK(BM_HilbertDistance);

void BM_InvertedOrbitZeta(benchmark::State& state) {
    ZetaTower zt = zeta_tower(kPer012, state.range(0), SimplexPoint::barycentre());
    for (auto _ : state) benchmark::DoNotOptimize(inverted_orbit(zt.word, kPer012).size());
}
BENCHMARK(BM_InvertedOrbitZeta)->Arg(4)->Arg(6);

void BM_Synthesize(benchmark::State& state) {
    TargetGrowth g = preset_growth("pow:0.85");
    SimplexPoint bary = SimplexPoint::barycentre();
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_omega(g, bary, state.range(0)).prefix.size());
}
BENCHMARK(BM_Synthesize)->Arg(100)->Arg(300);

} // namespace

BENCHMARK_MAIN();
