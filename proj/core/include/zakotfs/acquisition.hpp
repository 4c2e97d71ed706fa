#pragma once

#include "zakotfs/channel.hpp"
#include "zakotfs/framing.hpp"

namespace zakotfs {

/**
 * Crystallization arithmetic for a channel with delay spread tau_max and
 * Doppler shifts in [-nu_max, nu_max], on a given grid, optionally with Q
 * interleaved pilots. delay_ok/doppler_ok are the single-pilot conditions
 * (k_max < M, l_max < N); effective_ok is the Q-pilot condition
 * (k_max + 2 <= M/Q and l_max < Q N).
 */
struct CrystallizationReport {
    int k_max = 0;
    int l_max = 0;
    int q = 1;
    bool delay_ok = false;
    bool doppler_ok = false;
    bool effective_ok = false;
    bool crystallized() const { return delay_ok && doppler_ok; }
};

CrystallizationReport check_crystallization(const GridParams& params, double tau_max,
                                            double nu_max, int q = 1);

/**
 * Sampled (cross-)ambiguity surface over a signed (k,l) window; the window
 * may span several fundamental domains.
 */
class AmbiguitySurface {
public:
    AmbiguitySurface() = default;
    AmbiguitySurface(const GridParams& params, const TapWindow& win)
        : params_(params), win_(win),
          values_(static_cast<size_t>(win.k_hi - win.k_lo + 1) * (win.l_hi - win.l_lo + 1)) {}

    const GridParams& params() const { return params_; }
    const TapWindow& window() const { return win_; }
    Complex at(int k, int l) const { return values_[idx(k, l)]; }
    Complex& ref(int k, int l) { return values_[idx(k, l)]; }

private:
    size_t idx(int k, int l) const {
        return static_cast<size_t>(k - win_.k_lo) * (win_.l_hi - win_.l_lo + 1) + (l - win_.l_lo);
    }
    GridParams params_;
    TapWindow win_{};
    CVec values_;
};

// A[k,l] = sum_{k'=0..M-1, l'=0..N-1} y(k',l') conj(x(k'-k, l'-l))
//          e^{-j 2 pi l (k'-k)/(MN)},  direct summation.
AmbiguitySurface cross_ambiguity(const DDSignal& y, const DDSignal& x, const TapWindow& window);

// Auto-ambiguity of the layout's pilot signal. For regular spacing it is
// supported on the lattice {(n M/Q, m Q N)} with value E_p there.
AmbiguitySurface auto_ambiguity(const FrameLayout& layout, const TapWindow& window);

// Single-pilot read-off: taps[k,l] = y(k+k_p, l+l_p) e^{-j 2 pi k_p l/(MN)} / sqrt(E_p)
// over the given support window.
DDFilter readoff_single_pilot(const DDSignal& y, int k_p, int l_p, double e_p,
                              const TapWindow& window);

// Q-pilot linear least squares. For each delay offset k in [k_lo, k_hi] and
// Doppler residue l0 in [0, N), the probes y(k + k_p[i], l0) form a Q x Q
// system in the taps at the Q Doppler positions congruent to l0 within the
// symmetric window [-floor(Q/2) N + ..., ...) of length Q N. The system matrix
// depends only on l0, so it is factored once per residue.
// Throws estimation_error when the system condition exceeds cond_limit.
DDFilter ls_estimate(const DDSignal& y, const FrameLayout& layout, int k_lo, int k_hi,
                     double cond_limit = 1e12);
DDFilter ls_estimate(const DDSignal& y, const FrameLayout& layout);

// Cross-ambiguity channel estimate: taps[k,l] = A_{y,x_p}[k,l] / E_p over a
// support window inside one fundamental domain of the pilot lattice.
// Requires regular spacing (otherwise the surface is not lattice-supported
// and the read-off is ill-posed); diagnoses via layout_error.
DDFilter ambiguity_estimate(const DDSignal& y, const FrameLayout& layout, int k_lo, int k_hi);
DDFilter ambiguity_estimate(const DDSignal& y, const FrameLayout& layout);

// |determinant| of the two-pilot linear system:
// (E_p/2) |e^{-j2pi k_p1/M} - e^{-j2pi k_p2/M}|.
double conditioning_determinant(int k_p1, int k_p2, int m, double e_p);

// Doppler tap positions estimated for residue l0 with Q pilots: the Q values
// congruent to l0 (mod N) inside the centered window of length Q N.
std::vector<int> doppler_positions(int l0, int q, int n);

} // namespace zakotfs
