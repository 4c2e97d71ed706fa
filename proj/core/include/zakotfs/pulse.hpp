#pragma once

#include "zakotfs/grid.hpp"

namespace zakotfs {

// Root-raised-cosine waveform
//   rrc_b(x) = [sin(pi x (1-b)) + 4 b x cos(pi x (1+b))] / [pi x (1 - (4bx)^2)]
// evaluated as a total function: the removable singularities at x = 0 and
// x = +-1/(4b) return the analytic limits.
double rrc(double x, double beta);

// Fourier transform of rrc (square root of the raised-cosine spectrum),
// supported on |phi| <= (1+beta)/2.
double rrc_spectrum(double phi, double beta);

/**
 * Factorizable RRC transmit filter specification.
 * Effective bandwidth B' = (1+beta_tau) B, effective duration T' = (1+beta_nu) T.
 * `cutoff` truncates the rrc waveform: rrc(x) is treated as 0 for |x| > cutoff.
 * `nodes_per_cell` sets the quadrature resolution per information-lattice cell.
 */
struct RRCFilterSpec {
    double beta_tau = 0.6;
    double beta_nu = 0.6;
    GridParams params;
    double cutoff = 40.0;
    int nodes_per_cell = 8;

    RRCFilterSpec() = default;
    RRCFilterSpec(double bt, double bn, const GridParams& p)
        : beta_tau(bt), beta_nu(bn), params(p) {
        if (bt < 0.0 || bt > 1.0 || bn < 0.0 || bn > 1.0)
            throw std::invalid_argument("RRCFilterSpec: roll-off must be in [0,1]");
    }

    double b_prime() const { return (1.0 + beta_tau) * params.bandwidth(); }
    double t_prime() const { return (1.0 + beta_nu) * params.duration(); }
};

// w_tx(tau, nu) = sqrt(BT) rrc_bt(B tau) rrc_bn(nu T); real-valued, typed
// complex for uniformity with the rest of the DD algebra.
Complex w_tx(const RRCFilterSpec& spec, double tau, double nu);

// Matched receive filter w_rx(tau, nu) = conj(w_tx(-tau, -nu)) e^{j 2 pi nu tau}.
Complex w_rx(const RRCFilterSpec& spec, double tau, double nu);

} // namespace zakotfs
