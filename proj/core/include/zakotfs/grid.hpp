#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace zakotfs {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

inline Complex cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

/**
 * Zak-OTFS numerology. The information grid has M delay bins per delay
 * period tau_p and N Doppler bins per Doppler period nu_p, with
 * tau_p * nu_p = 1. Bandwidth B = M * nu_p, subframe duration T = N * tau_p.
 */
struct GridParams {
    int m = 0;             // delay bins per period
    int n = 0;             // Doppler bins per period
    double nu_p = 0.0;     // Doppler period [Hz]
    double tau_p = 0.0;    // delay period [s]

    GridParams() = default;
    GridParams(int m_, int n_, double nu_p_)
        : m(m_), n(n_), nu_p(nu_p_), tau_p(1.0 / nu_p_) {
        if (m_ <= 0 || n_ <= 0 || nu_p_ <= 0.0)
            throw std::invalid_argument("GridParams: M, N, nu_p must be positive");
    }

    double bandwidth() const { return m * nu_p; }     // B [Hz]
    double duration() const { return n * tau_p; }     // T [s]
    double delay_res() const { return tau_p / m; }    // 1/B
    double doppler_res() const { return nu_p / n; }   // 1/T
    int grid_size() const { return m * n; }

    bool operator==(const GridParams& o) const {
        return m == o.m && n == o.n && nu_p == o.nu_p;
    }
};

} // namespace zakotfs
