#include <doctest.h>

#include "zakotfs/framing.hpp"
#include "zakotfs/rng.hpp"

using namespace zakotfs;

namespace {
const GridParams kGrid(64, 24, 7.5e3);
}

TEST_CASE("interleaved layouts at the reference numerology") {
    SUBCASE("single pilot") {
        const FrameLayout lay = layout_interleaved(kGrid, 1, 2, Spacing::regular(), 1.0, 1.0);
        CHECK(lay.pilot_delays() == std::vector<int>{0});
        CHECK(lay.non_data_columns() == 7);
        CHECK(lay.overhead() == doctest::Approx(7.0 / 64.0));
        CHECK(lay.data_count() == 1368);
    }
    SUBCASE("two pilots") {
        const FrameLayout lay = layout_interleaved(kGrid, 2, 2, Spacing::regular(), 1.0, 1.0);
        CHECK(lay.pilot_delays() == std::vector<int>{0, 32});
        CHECK(lay.non_data_columns() == 14);
        CHECK(lay.data_count() == 1200);
        CHECK(lay.regular());
    }
    SUBCASE("four pilots") {
        const FrameLayout lay = layout_interleaved(kGrid, 4, 2, Spacing::regular(), 1.0, 1.0);
        CHECK(lay.pilot_delays() == std::vector<int>{0, 16, 32, 48});
        CHECK(lay.non_data_columns() == 28);
        CHECK(lay.overhead() == doctest::Approx(28.0 / 64.0));
        CHECK(lay.data_count() == 864);
    }
}

TEST_CASE("layout validation") {
    SUBCASE("regular requires divisibility") {
        CHECK_THROWS_AS(layout_interleaved(kGrid, 3, 2, Spacing::regular(), 1.0, 1.0),
                        layout_error);
    }
    SUBCASE("pilot strips must fit") {
        CHECK_THROWS_AS(layout_interleaved(kGrid, 32, 2, Spacing::regular(), 1.0, 1.0),
                        layout_error);
    }
    SUBCASE("custom spacing below k_max+2 names the offending pair") {
        try {
            layout_interleaved(kGrid, 2, 2, Spacing::custom({0, 3}), 1.0, 1.0);
            FAIL("expected layout_error");
        } catch (const layout_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("0") != std::string::npos);
            CHECK(msg.find("3") != std::string::npos);
        }
    }
    SUBCASE("circular separation counts the wrap-around") {
        // |0 - 62| = 62 but circularly 2 < 4
        CHECK_THROWS_AS(layout_interleaved(kGrid, 2, 2, Spacing::custom({0, 62}), 1.0, 1.0),
                        layout_error);
    }
    SUBCASE("allow_aliasing admits tight spacings down to 1") {
        const FrameLayout lay =
            layout_interleaved(kGrid, 2, 2, Spacing::custom({0, 2}, true), 1.0, 1.0);
        CHECK(lay.q() == 2);
        CHECK_THROWS_AS(layout_interleaved(kGrid, 2, 2, Spacing::custom({5, 5}, true), 1.0, 1.0),
                        layout_error);
    }
    SUBCASE("spacing 7 is legal without the flag at k_max=2") {
        const FrameLayout lay = layout_interleaved(kGrid, 2, 2, Spacing::custom({0, 7}), 1.0, 1.0);
        CHECK_FALSE(lay.regular());
        CHECK(lay.data_count() == (64 - 14) * 24);
    }
}

TEST_CASE("layout partition property") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 8 * (1 + static_cast<int>(rng.next() % 8));
        const int n = 2 + static_cast<int>(rng.next() % 23);
        const int k_max = static_cast<int>(rng.next() % 3);
        const GridParams g(m, n, 1.0e3);
        std::vector<int> qs;
        for (int q = 1; q <= m / (k_max + 2); ++q)
            if (m % q == 0) qs.push_back(q);
        const int q = qs[rng.next() % qs.size()];
        const FrameLayout lay = layout_interleaved(g, q, k_max, Spacing::regular(), 1.0, 1.0);

        int data_cols = 0;
        for (int k = 0; k < m; ++k)
            if (lay.column_kind(k) == CellKind::Data) ++data_cols;
        CHECK(data_cols * n == lay.data_count());
        CHECK(data_cols + lay.non_data_columns() == m);
        // non-merging blocks occupy exactly Q (2 k_max + 3) columns
        if (m / q >= 2 * k_max + 3) CHECK(lay.non_data_columns() == q * (2 * k_max + 3));
    }
}

TEST_CASE("pdr round trip") {
    for (double pdr : {-10.0, 0.0, 5.0, 20.0}) {
        const FrameLayout lay = layout_interleaved_pdr(kGrid, 2, 2, Spacing::regular(), 3.7, pdr);
        CHECK(lay.pdr_db() == doctest::Approx(pdr).epsilon(1e-12));
    }
}

TEST_CASE("gray 4-qam") {
    SUBCASE("fixed corner") {
        const std::vector<uint8_t> bits{0, 0};
        const CVec s = qam_map(bits);
        CHECK(s[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(s[0].imag() == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    SUBCASE("round trip over all patterns") {
        const std::vector<uint8_t> bits{0, 0, 0, 1, 1, 0, 1, 1};
        CHECK(qam_demap(qam_map(bits)) == bits);
    }
    SUBCASE("unit average energy") {
        const std::vector<uint8_t> bits{0, 0, 0, 1, 1, 0, 1, 1};
        double e = 0.0;
        for (const auto& s : qam_map(bits)) e += std::norm(s);
        CHECK(e / 4.0 == doctest::Approx(1.0));
    }
    SUBCASE("odd bit count throws") {
        const std::vector<uint8_t> bits{0, 1, 0};
        CHECK_THROWS_AS(qam_map(bits), std::invalid_argument);
    }
}

TEST_CASE("pilot signal") {
    SUBCASE("single pilot carries full energy at one sample") {
        const FrameLayout lay = layout_interleaved(kGrid, 1, 2, Spacing::regular(), 0.0, 1.0);
        const DDSignal p = pilot_signal(lay);
        CHECK(std::abs(p.at(0, 0) - Complex{1.0, 0.0}) < 1e-15);
        CHECK(p.energy() == doctest::Approx(1.0));
    }
    SUBCASE("two pilots split the energy") {
        const FrameLayout lay = layout_interleaved(kGrid, 2, 2, Spacing::regular(), 0.0, 3.0);
        const DDSignal p = pilot_signal(lay);
        CHECK(std::abs(p.at(0, 0)) == doctest::Approx(std::sqrt(1.5)));
        CHECK(std::abs(p.at(32, 0)) == doctest::Approx(std::sqrt(1.5)));
        CHECK(p.energy() == doctest::Approx(3.0));
    }
}

TEST_CASE("subframe assembly") {
    Rng rng(23);
    SUBCASE("energies add disjointly") {
        const FrameLayout lay = layout_interleaved_pdr(kGrid, 2, 2, Spacing::regular(),
                                                       1200.0, 5.0);
        std::vector<uint8_t> bits(2 * lay.data_count());
        for (auto& b : bits) b = static_cast<uint8_t>(rng.bit());
        const Subframe f = build_subframe(lay, bits);
        CHECK(f.signal.energy() ==
              doctest::Approx(lay.e_d() + lay.e_p()).epsilon(1e-10));
        CHECK(static_cast<int>(f.tx_symbols.size()) == lay.data_count());
    }
    SUBCASE("wrong bit count throws") {
        const FrameLayout lay = layout_interleaved(kGrid, 1, 2, Spacing::regular(), 1.0, 1.0);
        std::vector<uint8_t> bits(7);
        CHECK_THROWS_AS(build_subframe(lay, bits), std::invalid_argument);
    }
    SUBCASE("all-pilot frame carries only pilot energy") {
        // M = 7 columns are fully consumed by one pilot block at k_max = 2
        const GridParams tiny(7, 4, 1.0e3);
        const FrameLayout lay = layout_interleaved(tiny, 1, 2, Spacing::regular(), 0.0, 2.5);
        CHECK(lay.data_count() == 0);
        const Subframe f = build_subframe(lay, {});
        CHECK(f.signal.energy() == doctest::Approx(2.5));
    }
    SUBCASE("unit pilot amplitude at E_p = 1, Q = 1") {
        const FrameLayout lay = layout_interleaved(kGrid, 1, 2, Spacing::regular(),
                                                   1368.0, 1.0);
        std::vector<uint8_t> bits(2 * lay.data_count());
        for (auto& b : bits) b = static_cast<uint8_t>(rng.bit());
        const Subframe f = build_subframe(lay, bits);
        CHECK(std::abs(f.signal.at(0, 0)) == doctest::Approx(1.0));
    }
}
