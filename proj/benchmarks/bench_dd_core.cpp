#include <benchmark/benchmark.h>

#include "zakotfs/acquisition.hpp"

using namespace zakotfs;

namespace {

const GridParams kGrid(64, 24, 7.5e3);

DDSignal random_signal(Rng& rng) {
    DDSignal x(kGrid);
    for (auto& v : x.grid()) v = rng.cgauss(1.0);
    return x;
}

DDFilter random_taps(int k_lo, int k_hi, int l_lo, int l_hi, Rng& rng) {
    DDFilter h(kGrid, k_lo, k_hi, l_lo, l_hi);
    for (auto& t : h.taps()) t = rng.cgauss(1.0);
    return h;
}

void BM_TwistedConvolve(benchmark::State& state) {
    Rng rng(1);
    const int lw = static_cast<int>(state.range(0));
    const DDFilter h = random_taps(-1, 2, -lw, lw - 1, rng);
    const DDSignal x = random_signal(rng);
    for (auto _ : state) benchmark::DoNotOptimize(twisted_convolve(h, x));
}
BENCHMARK(BM_TwistedConvolve)->Arg(12)->Arg(24)->Arg(48);

void BM_CrossAmbiguitySupportWindow(benchmark::State& state) {
    Rng rng(2);
    const int q = static_cast<int>(state.range(0));
    const FrameLayout lay = layout_interleaved(kGrid, q, 2, Spacing::regular(), 0.0, 1.0);
    DDSignal y = random_signal(rng);
    const TapWindow win{-1, 2, -q * 12, q * 12 - 1};
    for (auto _ : state) benchmark::DoNotOptimize(cross_ambiguity(y, pilot_signal(lay), win));
}
BENCHMARK(BM_CrossAmbiguitySupportWindow)->Arg(1)->Arg(2)->Arg(4);

void BM_AutoAmbiguityHeatmap(benchmark::State& state) {
    const FrameLayout lay = layout_interleaved(kGrid, 2, 2, Spacing::regular(), 0.0, 1.0);
    const TapWindow win{-64, 64, -48, 48};
    for (auto _ : state) benchmark::DoNotOptimize(auto_ambiguity(lay, win));
}
BENCHMARK(BM_AutoAmbiguityHeatmap);

void BM_LsEstimate(benchmark::State& state) {
    Rng rng(3);
    const int q = static_cast<int>(state.range(0));
    const FrameLayout lay = layout_interleaved(kGrid, q, 2, Spacing::regular(), 0.0, 1.0);
    const DDFilter h = random_taps(-1, 2, -q * 12, q * 12 - 1, rng);
    const DDSignal y = twisted_convolve(h, pilot_signal(lay));
    for (auto _ : state) benchmark::DoNotOptimize(ls_estimate(y, lay));
}
BENCHMARK(BM_LsEstimate)->Arg(1)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
