#pragma once

#include "zakotfs/channel.hpp"

namespace zakotfs {

// Complex baseband samples at a uniform rate.
struct TDSignal {
    double t0 = 0.0;    // time of samples[0] [s]
    double rate = 0.0;  // [Hz]
    CVec samples;

    double duration() const { return samples.size() / rate; }
    double energy() const {
        double e = 0.0;
        for (const auto& v : samples) e += std::norm(v);
        return e / rate;
    }
};

// Band-limited (windowed-sinc) evaluation of s at an arbitrary time.
Complex interp_sample(const TDSignal& s, double t);

// Time-domain realization of a quasi-periodic DD signal with transmit pulse
// shaping: the inverse Zak transform sqrt(tau_p) int_0^{nu_p} x^{w_tx}(t, nu) dnu
// evaluated at rate oversample * B'. The delay comb is truncated at the filter
// cutoff; the Doppler-period integral of the shaped comb is evaluated by
// Simpson quadrature over the truncated pulse. The resulting pulse train is
// centered on t = 0 and spans roughly [-T'/2, T'/2].
TDSignal td_realize(const DDSignal& x, const RRCFilterSpec& spec, int oversample = 16);

// sum_i h_i s(t - tau_i) e^{j 2 pi nu_i (t - tau_i)}; fractional delays via
// band-limited interpolation on the oversampled grid.
TDSignal apply_physical_channel_td(const TDSignal& s, const PhysicalChannel& chan);

// Receive-side matched filtering expressed in the time domain: convolution
// with the delay-axis RRC followed by the Doppler-axis RRC spectral window.
// Acting on the Zak transform, this equals twisted convolution with w_rx.
TDSignal matched_filter_td(const TDSignal& r, const RRCFilterSpec& spec);

// Zak transform on the fine delay grid (one delay period at the sample rate)
// and the N-point Doppler grid:
//   Z(tau, nu) = sqrt(tau_p) sum_n s(tau + n tau_p) e^{-j 2 pi n nu tau_p}.
struct ZakGrid {
    GridParams params;
    double tau_step = 0.0;
    CVec values; // n_tau x N, row-major in the delay index
    int n_tau = 0;

    Complex at(int i, int l) const { return values[static_cast<size_t>(i) * params.n + l]; }
};

ZakGrid zak_transform(const TDSignal& s, const GridParams& params);

// Zak transform sampled on the information lattice (k/B, l/T).
DDSignal zak_sample_lattice(const TDSignal& s, const GridParams& params);

// Peak instantaneous power over average subframe power (total energy divided
// by the subframe duration), in dB.
double papr_db(const TDSignal& s, double duration);

} // namespace zakotfs
