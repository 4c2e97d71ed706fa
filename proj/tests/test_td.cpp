#include <doctest.h>

#include "zakotfs/framing.hpp"
#include "zakotfs/td.hpp"

using namespace zakotfs;

namespace {

// small grid keeps the TD chains fast; physics is size-independent
const GridParams kGrid(16, 8, 7.5e3);

RRCFilterSpec spec06() { return RRCFilterSpec(0.6, 0.6, kGrid); }

std::vector<double> pulse_times(const TDSignal& s, double thresh_frac) {
    double peak = 0.0;
    for (const auto& v : s.samples) peak = std::max(peak, std::abs(v));
    std::vector<double> times;
    const double thr = thresh_frac * peak;
    for (size_t j = 1; j + 1 < s.samples.size(); ++j) {
        const double m = std::abs(s.samples[j]);
        if (m > thr && m >= std::abs(s.samples[j - 1]) && m >= std::abs(s.samples[j + 1]))
            times.push_back(s.t0 + j / s.rate);
    }
    return times;
}

} // namespace

TEST_CASE("pilot pulse trains") {
    const RRCFilterSpec spec = spec06();

    SUBCASE("single pilot yields tau_p-spaced pulses through k_p/B") {
        const int kp = 3;
        const TDSignal s = td_realize(point_pulse(kGrid, kp, 0, {1.0, 0.0}), spec, 16);
        const auto times = pulse_times(s, 0.5);
        REQUIRE(times.size() >= 4);
        for (size_t i = 1; i < times.size(); ++i)
            CHECK(times[i] - times[i - 1] == doctest::Approx(kGrid.tau_p).epsilon(1e-3));
        // each strong pulse sits near k_p/B + n tau_p
        for (double t : times) {
            const double frac = std::fmod(t - kp / kGrid.bandwidth(), kGrid.tau_p);
            const double off = std::min(std::abs(frac), kGrid.tau_p - std::abs(frac));
            CHECK(off < 2.0 / spec.b_prime());
        }
    }
    SUBCASE("Q interleaved pilots pack pulses tau_p/Q apart") {
        const GridParams g = kGrid;
        DDSignal xp(g);
        xp.at(0, 0) = std::sqrt(0.5);
        xp.at(8, 0) = std::sqrt(0.5);
        const TDSignal s = td_realize(xp, spec, 16);
        const auto times = pulse_times(s, 0.5);
        REQUIRE(times.size() >= 8);
        for (size_t i = 1; i < times.size(); ++i)
            CHECK(times[i] - times[i - 1] == doctest::Approx(g.tau_p / 2).epsilon(1e-3));
    }
    SUBCASE("realized energy matches the grid energy") {
        DDSignal xp(kGrid);
        xp.at(0, 0) = 1.0;
        const TDSignal s = td_realize(xp, spec, 16);
        CHECK(s.energy() == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("linearity") {
        Rng rng(3);
        DDSignal a(kGrid), b(kGrid);
        for (auto& v : a.grid()) v = rng.cgauss(1.0);
        for (auto& v : b.grid()) v = rng.cgauss(1.0);
        const Complex ca{0.3, 0.8}, cb{-1.1, 0.2};
        DDSignal mix(kGrid);
        for (int i = 0; i < kGrid.grid_size(); ++i)
            mix.grid()[i] = ca * a.grid()[i] + cb * b.grid()[i];
        const TDSignal sa = td_realize(a, spec, 8);
        const TDSignal sb = td_realize(b, spec, 8);
        const TDSignal sm = td_realize(mix, spec, 8);
        for (size_t j = 0; j < sm.samples.size(); j += 37)
            CHECK(std::abs(sm.samples[j] - (ca * sa.samples[j] + cb * sb.samples[j])) < 1e-10);
    }
    SUBCASE("a delay-bin shift delays the realization") {
        // exact up to the slowly varying Doppler taper across the pulse train
        const TDSignal s0 = td_realize(point_pulse(kGrid, 4, 2, {1.0, 0.0}), spec, 16);
        const TDSignal s1 = td_realize(point_pulse(kGrid, 5, 2, {1.0, 0.0}), spec, 16);
        double peak = 0.0, worst = 0.0;
        for (size_t j = 0; j < s1.samples.size(); ++j) {
            const double t = s1.t0 + j / s1.rate;
            const Complex want = interp_sample(s0, t - 1.0 / kGrid.bandwidth());
            peak = std::max(peak, std::abs(s1.samples[j]));
            worst = std::max(worst, std::abs(s1.samples[j] - want));
        }
        CHECK(worst / peak < 3e-2);
    }
    SUBCASE("low oversampling is rejected") {
        CHECK_THROWS_AS(td_realize(DDSignal(kGrid), spec, 1), std::invalid_argument);
    }
}

TEST_CASE("physical channel on samples") {
    const RRCFilterSpec spec = spec06();
    DDSignal xp(kGrid);
    xp.at(2, 0) = 1.0;
    const TDSignal s = td_realize(xp, spec, 16);

    SUBCASE("identity path is exact") {
        PhysicalChannel id{{PathSpec{{1.0, 0.0}, 0.0, 0.0}}};
        const TDSignal r = apply_physical_channel_td(s, id);
        for (size_t j = 0; j < s.samples.size(); j += 53)
            CHECK(std::abs(r.samples[j] - s.samples[j]) < 1e-9);
    }
    SUBCASE("integer-sample delay shifts exactly") {
        const int shift = 5;
        PhysicalChannel d{{PathSpec{{1.0, 0.0}, shift / s.rate, 0.0}}};
        const TDSignal r = apply_physical_channel_td(s, d);
        for (size_t j = shift; j < s.samples.size(); j += 41)
            CHECK(std::abs(r.samples[j] - s.samples[j - shift]) < 1e-9);
    }
    SUBCASE("opposite Doppler pair beats as a cosine envelope") {
        const double nu0 = 400.0;
        PhysicalChannel pair{{PathSpec{{0.5, 0.0}, 0.0, nu0}, PathSpec{{0.5, 0.0}, 0.0, -nu0}}};
        const TDSignal r = apply_physical_channel_td(s, pair);
        for (size_t j = 0; j < s.samples.size(); j += 29) {
            const double t = s.t0 + j / s.rate;
            const double want = std::abs(std::cos(2.0 * kPi * nu0 * t)) * std::abs(s.samples[j]);
            CHECK(std::abs(std::abs(r.samples[j]) - want) < 1e-6);
        }
    }
}

TEST_CASE("zak transform") {
    const RRCFilterSpec spec = spec06();

    SUBCASE("zero signal transforms to zero") {
        TDSignal z;
        z.t0 = 0.0;
        z.rate = 16 * spec.b_prime();
        z.samples.assign(static_cast<size_t>(z.rate * kGrid.duration()), Complex{0.0, 0.0});
        const ZakGrid zg = zak_transform(z, kGrid);
        for (const auto& v : zg.values) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("insufficient extent throws") {
        TDSignal z;
        z.t0 = 0.0;
        z.rate = 1e6;
        z.samples.assign(10, Complex{0.0, 0.0});
        CHECK_THROWS_AS(zak_transform(z, kGrid), std::invalid_argument);
    }
    SUBCASE("pure tone concentrates on its Doppler bin") {
        const int l0 = 3;
        const double nu0 = l0 * kGrid.doppler_res();
        TDSignal tone;
        tone.rate = 16 * spec.b_prime();
        tone.t0 = -kGrid.duration() / 2;
        tone.samples.resize(static_cast<size_t>(tone.rate * kGrid.duration()));
        for (size_t j = 0; j < tone.samples.size(); ++j)
            tone.samples[j] = cis(2.0 * kPi * nu0 * (tone.t0 + j / tone.rate));
        const DDSignal y = zak_sample_lattice(tone, kGrid);
        for (int k = 0; k < kGrid.m; k += 3) {
            double best = -1.0;
            int best_l = -1;
            for (int l = 0; l < kGrid.n; ++l)
                if (std::abs(y.at(k, l)) > best) {
                    best = std::abs(y.at(k, l));
                    best_l = l;
                }
            CHECK(best_l == l0);
        }
        // fine-delay grid agrees
        const ZakGrid zg = zak_transform(tone, kGrid);
        for (int i = 0; i < zg.n_tau; i += zg.n_tau / 5) {
            double best = -1.0;
            int best_l = -1;
            for (int l = 0; l < kGrid.n; ++l)
                if (std::abs(zg.at(i, l)) > best) {
                    best = std::abs(zg.at(i, l));
                    best_l = l;
                }
            CHECK(best_l == l0);
        }
    }
    SUBCASE("round trip recovers the tx-filtered signal") {
        Rng rng(7);
        DDSignal x(kGrid);
        for (auto& v : x.grid()) v = rng.cgauss(1.0);
        const DDSignal y = zak_sample_lattice(td_realize(x, spec, 16), kGrid);
        // lattice samples of w_tx act as a DD filter
        DDFilter gtx(kGrid, -6, 6, -6, 6);
        for (int k = -6; k <= 6; ++k)
            for (int l = -6; l <= 6; ++l)
                gtx.ref(k, l) =
                    w_tx(spec, k / kGrid.bandwidth(), l / kGrid.duration());
        const DDSignal want = twisted_convolve(gtx, x);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < kGrid.grid_size(); ++i) {
            num = std::max(num, std::abs(y.grid()[i] - want.grid()[i]));
            den = std::max(den, std::abs(want.grid()[i]));
        }
        CHECK(num / den < 1e-2);
    }
}

TEST_CASE("papr") {
    SUBCASE("constant modulus signal sits at 0 dB") {
        TDSignal c;
        c.t0 = 0.0;
        c.rate = 1e6;
        c.samples.assign(static_cast<size_t>(c.rate * 1e-3), Complex{0.7, -0.7});
        CHECK(papr_db(c, 1e-3) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("zero signal throws") {
        TDSignal z;
        z.t0 = 0.0;
        z.rate = 1e6;
        z.samples.assign(100, Complex{0.0, 0.0});
        CHECK_THROWS_AS(papr_db(z, 1e-4), std::invalid_argument);
    }
}
