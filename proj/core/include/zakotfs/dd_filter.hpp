#pragma once

#include "zakotfs/dd_signal.hpp"

namespace zakotfs {

/**
 * Finite-support DD filter h[k,l] with signed tap offsets: k in [k_lo, k_hi],
 * l in [l_lo, l_hi]. Taps outside the window are implicitly zero. Offsets are
 * signed (not wrapped into [0,M)) because channel acquisition addresses taps
 * by signed delay/Doppler offsets.
 */
class DDFilter {
public:
    DDFilter() = default;
    DDFilter(const GridParams& params, int k_lo, int k_hi, int l_lo, int l_hi)
        : params_(params), k_lo_(k_lo), k_hi_(k_hi), l_lo_(l_lo), l_hi_(l_hi),
          taps_(static_cast<size_t>(num_k()) * num_l(), Complex{0.0, 0.0}) {
        if (k_hi < k_lo || l_hi < l_lo)
            throw std::invalid_argument("DDFilter: empty support window");
    }

    const GridParams& params() const { return params_; }
    int k_lo() const { return k_lo_; }
    int k_hi() const { return k_hi_; }
    int l_lo() const { return l_lo_; }
    int l_hi() const { return l_hi_; }
    int num_k() const { return k_hi_ - k_lo_ + 1; }
    int num_l() const { return l_hi_ - l_lo_ + 1; }
    int num_taps() const { return num_k() * num_l(); }

    bool contains(int k, int l) const {
        return k >= k_lo_ && k <= k_hi_ && l >= l_lo_ && l <= l_hi_;
    }

    Complex at(int k, int l) const {
        if (!contains(k, l)) return {0.0, 0.0};
        return taps_[idx(k, l)];
    }
    Complex& ref(int k, int l) { return taps_[idx(k, l)]; }

    const CVec& taps() const { return taps_; }
    CVec& taps() { return taps_; }

    double energy() const {
        double e = 0.0;
        for (const auto& v : taps_) e += std::norm(v);
        return e;
    }

private:
    size_t idx(int k, int l) const {
        return static_cast<size_t>(k - k_lo_) * num_l() + (l - l_lo_);
    }

    GridParams params_;
    int k_lo_ = 0, k_hi_ = 0, l_lo_ = 0, l_hi_ = 0;
    CVec taps_;
};

// Unit delta filter at tap (k0, l0).
DDFilter delta_filter(const GridParams& params, int k0 = 0, int l0 = 0,
                      Complex amplitude = {1.0, 0.0});

// Discrete twisted convolution of a filter with a quasi-periodic signal:
//   y[k,l] = sum_{k',l'} h[k',l'] x(k-k', l-l') exp(j 2 pi l'(k-k')/(MN))
// with x extended quasi-periodically; y is again quasi-periodic.
DDSignal twisted_convolve(const DDFilter& h, const DDSignal& x);

// Discrete twisted convolution of two finite filters (no quasi-periodic
// wrap); the support window is the Minkowski sum of the inputs' windows.
DDFilter twisted_convolve_filters(const DDFilter& a, const DDFilter& b);

} // namespace zakotfs
