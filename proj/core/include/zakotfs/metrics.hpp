#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include "zakotfs/dd_filter.hpp"

namespace zakotfs {

inline double ber(std::span<const uint8_t> tx, std::span<const uint8_t> rx) {
    if (tx.size() != rx.size()) throw std::invalid_argument("ber: length mismatch");
    size_t d = 0;
    for (size_t i = 0; i < tx.size(); ++i) d += tx[i] != rx[i];
    return tx.empty() ? 0.0 : static_cast<double>(d) / tx.size();
}

// Tap-error energy over the union of the two support windows, normalized by
// the true tap energy.
inline double nmse(const DDFilter& h_true, const DDFilter& h_hat) {
    const double den = h_true.energy();
    if (den <= 0.0) throw std::invalid_argument("nmse: zero-energy reference");
    const int k_lo = std::min(h_true.k_lo(), h_hat.k_lo());
    const int k_hi = std::max(h_true.k_hi(), h_hat.k_hi());
    const int l_lo = std::min(h_true.l_lo(), h_hat.l_lo());
    const int l_hi = std::max(h_true.l_hi(), h_hat.l_hi());
    double num = 0.0;
    for (int k = k_lo; k <= k_hi; ++k)
        for (int l = l_lo; l <= l_hi; ++l) num += std::norm(h_true.at(k, l) - h_hat.at(k, l));
    return num / den;
}

inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

// Bits reliably carried per degree of freedom: (1 - H(ber)) n_bits / (B' T').
inline double effective_throughput(double ber_value, double n_info_bits, double b_prime,
                                   double t_prime) {
    return (1.0 - binary_entropy(ber_value)) * n_info_bits / (b_prime * t_prime);
}

} // namespace zakotfs
