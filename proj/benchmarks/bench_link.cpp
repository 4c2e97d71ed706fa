#include <benchmark/benchmark.h>

#include "zakotfs/equalizer.hpp"
#include "zakotfs/sim.hpp"
#include "zakotfs/td.hpp"

using namespace zakotfs;

namespace {

const GridParams kGrid(64, 24, 7.5e3);

void BM_EffectiveFilter(benchmark::State& state) {
    const double nu_max = static_cast<double>(state.range(0));
    RRCFilterSpec spec(0.6, 0.6, kGrid);
    Rng rng(11);
    const PhysicalChannel chan = sample_veh_a(nu_max, rng);
    const TapWindow win = support_bounds(2.51e-6, nu_max, kGrid, 4);
    for (auto _ : state) benchmark::DoNotOptimize(effective_filter(chan, spec, win));
}
BENCHMARK(BM_EffectiveFilter)->Arg(3000)->Arg(9000);

void BM_BuildChannelMatrix(benchmark::State& state) {
    Rng rng(12);
    DDFilter h(kGrid, -1, 2, -12, 11);
    for (auto& t : h.taps()) t = rng.cgauss(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(build_channel_matrix(h, kGrid));
}
BENCHMARK(BM_BuildChannelMatrix);

void BM_MmseDetect(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    Rng rng(13);
    FrameLayout probe = layout_interleaved(kGrid, q, 2, Spacing::regular(), 0.0, 0.0);
    const FrameLayout lay = layout_interleaved(kGrid, q, 2, Spacing::regular(),
                                               probe.data_count(),
                                               probe.data_count() * std::pow(10.0, 0.5));
    std::vector<uint8_t> bits(2 * lay.data_count());
    for (auto& b : bits) b = static_cast<uint8_t>(rng.bit());
    const Subframe f = build_subframe(lay, bits);
    DDFilter h(kGrid, -1, 2, -q * 12, q * 12 - 1);
    for (auto& t : h.taps()) t = rng.cgauss(1.0 / h.num_taps());
    DDSignal y = twisted_convolve(h, f.signal);
    y = add_awgn(y, 1e-2, rng);
    for (auto _ : state) benchmark::DoNotOptimize(mmse_detect(y, h, lay, 1e-2));
}
BENCHMARK(BM_MmseDetect)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TdRealizePilot(benchmark::State& state) {
    RRCFilterSpec spec(0.6, 0.6, kGrid);
    const FrameLayout lay = layout_interleaved(kGrid, 2, 2, Spacing::regular(), 0.0, 1.0);
    const DDSignal xp = pilot_signal(lay);
    for (auto _ : state) benchmark::DoNotOptimize(td_realize(xp, spec, 16));
}
BENCHMARK(BM_TdRealizePilot)->Unit(benchmark::kMillisecond);

} // namespace
