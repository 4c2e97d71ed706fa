#include <doctest.h>

#include "zakotfs/pulse.hpp"
#include "zakotfs/rng.hpp"

using namespace zakotfs;

namespace {

// composite-Simpson energy integral at a far finer step than the library's
// quadrature uses anywhere
double energy_integral(double beta, double span = 40.0, int n = 400000) {
    const double h = 2.0 * span / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -span + i * h;
        const double v = rrc(x, beta);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * v * v;
    }
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("rrc waveform values") {
    SUBCASE("peak value") {
        // L'Hopital limit at x -> 0: 1 + beta (4/pi - 1)
        CHECK(rrc(0.0, 0.6) == doctest::Approx(1.1639437268410977).epsilon(1e-12));
        CHECK(rrc(0.0, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("beta = 0 degenerates to sinc") {
        for (int k = 1; k <= 10; ++k) CHECK(std::abs(rrc(static_cast<double>(k), 0.0)) < 1e-12);
        CHECK(rrc(0.5, 0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    }
    SUBCASE("value at x = 1/(4 beta) equals the two-sided limit") {
        const double x0 = 1.0 / (4.0 * 0.6);
        const double v = rrc(x0, 0.6);
        CHECK(v == doctest::Approx(0.7106011739809375).epsilon(1e-9));
        CHECK(std::abs(rrc(x0 + 1e-6, 0.6) - v) < 1e-5);
        CHECK(std::abs(rrc(x0 - 1e-6, 0.6) - v) < 1e-5);
        CHECK(std::abs(0.5 * (rrc(x0 + 1e-6, 0.6) + rrc(x0 - 1e-6, 0.6)) - v) < 1e-6);
    }
    SUBCASE("continuity across the singular points") {
        for (double beta : {0.1, 0.6, 1.0}) {
            for (double x0 : {0.0, 1.0 / (4.0 * beta), -1.0 / (4.0 * beta)}) {
                const double v = rrc(x0, beta);
                CHECK(std::abs(rrc(x0 + 1e-8, beta) - v) < 1e-6);
                CHECK(std::abs(rrc(x0 - 1e-8, beta) - v) < 1e-6);
            }
        }
    }
    SUBCASE("even symmetry") {
        Rng rng(1);
        for (int i = 0; i < 200; ++i) {
            const double x = (rng.uniform() - 0.5) * 60.0;
            const double beta = rng.uniform();
            CHECK(rrc(x, beta) == rrc(-x, beta));
        }
    }
    SUBCASE("unit energy") {
        for (double beta : {0.6, 1.0})
            CHECK(energy_integral(beta) == doctest::Approx(1.0).epsilon(1e-6));
        // the tail of rrc_0.1 beyond |x|=40 still holds ~3e-6 of the energy,
        // so the small roll-off needs a wider span for the same tolerance
        CHECK(energy_integral(0.1, 400.0, 4000000) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("rrc spectrum") {
    const double beta = 0.6;
    SUBCASE("flat, roll-off, stop regions") {
        CHECK(rrc_spectrum(0.0, beta) == 1.0);
        CHECK(rrc_spectrum(0.19, beta) == 1.0);
        CHECK(rrc_spectrum(0.81, beta) == 0.0);
        CHECK(rrc_spectrum(2.0, beta) == 0.0);
        // midpoint of the roll-off: cos(pi/4)
        CHECK(rrc_spectrum(0.5, beta) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    SUBCASE("matches the transform of the waveform") {
        // midpoint-rule Fourier integral of rrc at a few frequencies
        for (double phi : {0.0, 0.1, 0.3, 0.5, 0.7}) {
            const int n = 200000;
            const double span = 40.0, h = 2.0 * span / n;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = -span + (i + 0.5) * h;
                acc += rrc(x, beta) * std::cos(2.0 * kPi * x * phi) * h;
            }
            CHECK(acc == doctest::Approx(rrc_spectrum(phi, beta)).epsilon(5e-4));
        }
    }
}

TEST_CASE("transmit and receive filters") {
    const GridParams g(64, 24, 7.5e3);
    RRCFilterSpec spec(0.6, 0.6, g);
    const double b = g.bandwidth(), t = g.duration();

    SUBCASE("center value") {
        const Complex v = w_tx(spec, 0.0, 0.0);
        CHECK(v.real() ==
              doctest::Approx(std::sqrt(b * t) * rrc(0.0, 0.6) * rrc(0.0, 0.6)).epsilon(1e-12));
        CHECK(v.imag() == 0.0);
    }
    SUBCASE("unit energy by separable quadrature") {
        // iint |w_tx|^2 = BT * (1/B) int rrc^2 * (1/T) int rrc^2 = (int rrc^2)^2
        const double e = energy_integral(0.6, 40.0, 200000);
        CHECK(e * e == doctest::Approx(1.0).epsilon(2e-6));
    }
    SUBCASE("sinc nulls at beta = 0") {
        RRCFilterSpec s0(0.0, 0.0, g);
        for (int k : {1, 2, 5})
            for (int l : {1, 3}) CHECK(std::abs(w_tx(s0, k / b, l / t)) < 1e-12);
    }
    SUBCASE("matched filter magnitude and center") {
        CHECK(w_rx(spec, 0.0, 0.0) == w_tx(spec, 0.0, 0.0));
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            const double tau = (rng.uniform() - 0.5) * 4.0 / b;
            const double nu = (rng.uniform() - 0.5) * 4.0 / t;
            CHECK(std::abs(w_rx(spec, tau, nu)) ==
                  doctest::Approx(std::abs(w_tx(spec, tau, nu))).epsilon(1e-12));
        }
    }
    SUBCASE("effective bandwidth and duration") {
        CHECK(spec.b_prime() == doctest::Approx(1.6 * 0.48e6));
        CHECK(spec.t_prime() == doctest::Approx(1.6 * 3.2e-3));
    }
    SUBCASE("roll-off range is validated") {
        CHECK_THROWS_AS(RRCFilterSpec(1.2, 0.5, g), std::invalid_argument);
        CHECK_THROWS_AS(RRCFilterSpec(0.5, -0.1, g), std::invalid_argument);
    }
}
