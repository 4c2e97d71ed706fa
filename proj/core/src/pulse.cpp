#include "zakotfs/pulse.hpp"

#include <cmath>

namespace zakotfs {

namespace {
constexpr double kSingEps = 1e-8;
}

double rrc(double x, double beta) {
    const double ax = std::abs(x);
    if (ax < kSingEps) {
        // limit at x -> 0
        return 1.0 + beta * (4.0 / kPi - 1.0);
    }
    if (beta > 0.0 && std::abs(4.0 * beta * ax - 1.0) < kSingEps) {
        // limit at x -> +-1/(4 beta)
        const double c = kPi / (4.0 * beta);
        return (beta / std::sqrt(2.0)) *
               ((1.0 + 2.0 / kPi) * std::sin(c) + (1.0 - 2.0 / kPi) * std::cos(c));
    }
    const double num =
        std::sin(kPi * x * (1.0 - beta)) + 4.0 * beta * x * std::cos(kPi * x * (1.0 + beta));
    const double den = kPi * x * (1.0 - 16.0 * beta * beta * x * x);
    return num / den;
}

double rrc_spectrum(double phi, double beta) {
    const double f = std::abs(phi);
    if (f <= (1.0 - beta) / 2.0) return 1.0;
    if (f >= (1.0 + beta) / 2.0) return 0.0;
    return std::cos(kPi / (2.0 * beta) * (f - (1.0 - beta) / 2.0));
}

Complex w_tx(const RRCFilterSpec& spec, double tau, double nu) {
    const double b = spec.params.bandwidth();
    const double t = spec.params.duration();
    return {std::sqrt(b * t) * rrc(b * tau, spec.beta_tau) * rrc(nu * t, spec.beta_nu), 0.0};
}

Complex w_rx(const RRCFilterSpec& spec, double tau, double nu) {
    return std::conj(w_tx(spec, -tau, -nu)) * cis(2.0 * kPi * nu * tau);
}

} // namespace zakotfs
