#pragma once

#include <array>

#include "zakotfs/dd_filter.hpp"
#include "zakotfs/pulse.hpp"
#include "zakotfs/rng.hpp"

namespace zakotfs {

// One propagation path of the doubly-spread channel.
struct PathSpec {
    Complex gain{0.0, 0.0};
    double delay_s = 0.0;
    double doppler_hz = 0.0;
};

struct PhysicalChannel {
    std::vector<PathSpec> paths;

    double max_delay() const {
        double d = 0.0;
        for (const auto& p : paths) d = std::max(d, p.delay_s);
        return d;
    }
};

// Veh-A power-delay profile (6 paths).
struct VehAProfile {
    static constexpr int kPaths = 6;
    static constexpr std::array<double, kPaths> delays_us{0.0, 0.31, 0.71, 1.09, 1.73, 2.51};
    static constexpr std::array<double, kPaths> powers_db{0.0, -1.0, -9.0, -10.0, -15.0, -20.0};
    static double max_delay_s() { return delays_us.back() * 1e-6; }
};

// Draws a Veh-A realization: gains are independent circular complex Gaussians
// with E|h_i|^2 proportional to the profile powers and normalized so that
// sum_i E|h_i|^2 = 1; Doppler shifts are nu_max * cos(theta_i) with theta_i
// uniform on [-pi, pi).
PhysicalChannel sample_veh_a(double nu_max, Rng& rng);

// Signed tap window [k_lo,k_hi] x [l_lo,l_hi] of a DD filter.
struct TapWindow {
    int k_lo = 0, k_hi = 0, l_lo = 0, l_hi = 0;
};

// Expected support window of the effective channel filter:
// k_max = ceil(M tau_max / tau_p), l_max = ceil(2 N nu_max / nu_p);
// k in [-margin, k_max+margin], l in [-ceil(l_max/2)-margin, ceil(l_max/2)+margin].
// The margin absorbs pulse-shaping ringing.
TapWindow support_bounds(double tau_max, double nu_max, const GridParams& params,
                         int margin = 4);

// Effective DD channel filter: (w_rx *s h_phy *s w_tx) sampled on the
// information lattice. The point-mass channel collapses one twisted
// convolution analytically; the remaining integral is evaluated with a
// tensor-product Simpson rule over the truncated filter support
// (spec.nodes_per_cell nodes per lattice cell in each dimension).
DDFilter effective_filter(const PhysicalChannel& chan, const RRCFilterSpec& spec,
                          const TapWindow& window);

// Same quantity via the alternative composition order (w_rx *s h_phy) *s w_tx
// evaluated as a plain 2D Simpson sum with path-centered nodes. Slow;
// validation oracle for the quadrature in effective_filter.
DDFilter effective_filter_reference(const PhysicalChannel& chan, const RRCFilterSpec& spec,
                                    const TapWindow& window);

// Adds i.i.d. circular complex Gaussian noise of variance sigma2 per
// fundamental-region sample.
DDSignal add_awgn(const DDSignal& y, double sigma2, Rng& rng);

} // namespace zakotfs
