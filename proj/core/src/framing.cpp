#include "zakotfs/framing.hpp"

#include <algorithm>
#include <cmath>

namespace zakotfs {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

FrameLayout layout_interleaved(const GridParams& params, int q, int k_max,
                               const Spacing& spacing, double e_d, double e_p) {
    if (q < 1) throw layout_error("layout: Q must be >= 1");
    if (k_max < 0) throw layout_error("layout: k_max must be >= 0");
    if (e_p < 0.0 || e_d < 0.0) throw layout_error("layout: energies must be >= 0");
    const int m = params.m;
    if (q * (k_max + 2) > m)
        throw layout_error("layout: Q (k_max+2) exceeds M, pilot strips cannot fit");

    FrameLayout lay;
    lay.params_ = params;
    lay.k_max_ = k_max;
    lay.e_d_ = e_d;
    lay.e_p_ = e_p;

    if (spacing.kind == Spacing::Kind::Regular) {
        if (m % q != 0)
            throw layout_error("layout: regular spacing requires Q to divide M");
        for (int i = 0; i < q; ++i) lay.pilot_delays_.push_back(i * (m / q));
        lay.regular_ = true;
    } else {
        if (static_cast<int>(spacing.delays.size()) != q)
            throw layout_error("layout: custom spacing needs exactly Q delays");
        for (int d : spacing.delays)
            if (d < 0 || d >= m) throw layout_error("layout: pilot delay outside [0, M)");
        const int min_sep = spacing.allow_aliasing ? 1 : k_max + 2;
        for (size_t i = 0; i < spacing.delays.size(); ++i) {
            for (size_t j = i + 1; j < spacing.delays.size(); ++j) {
                int d = std::abs(spacing.delays[i] - spacing.delays[j]);
                int sep = std::min(d, m - d);
                if (sep < min_sep)
                    throw layout_error("layout: pilots " + std::to_string(spacing.delays[i]) +
                                       " and " + std::to_string(spacing.delays[j]) +
                                       " are circularly closer than " + std::to_string(min_sep));
            }
        }
        lay.pilot_delays_ = spacing.delays;
        // regular means equispaced at M/Q starting anywhere is not enough for the
        // ambiguity lattice; require the exact (i-1) M/Q pattern up to rotation
        lay.regular_ = false;
        if (m % q == 0) {
            auto sorted = spacing.delays;
            std::sort(sorted.begin(), sorted.end());
            bool reg = true;
            for (int i = 1; i < q; ++i)
                if (sorted[i] - sorted[i - 1] != m / q) reg = false;
            lay.regular_ = reg;
        }
    }

    // pilot strip [k_p-1, k_p+k_max], guard k_max columns left / 1 right
    auto wrap = [m](int k) { return ((k % m) + m) % m; };
    lay.columns_.assign(static_cast<size_t>(m), CellKind::Data);
    for (int kp : lay.pilot_delays_) {
        for (int k = kp - 1 - k_max; k <= kp - 2; ++k) {
            auto& c = lay.columns_[wrap(k)];
            if (c == CellKind::Data) c = CellKind::Guard;
        }
        auto& right = lay.columns_[wrap(kp + k_max + 1)];
        if (right == CellKind::Data) right = CellKind::Guard;
    }
    for (int kp : lay.pilot_delays_) {
        for (int k = kp - 1; k <= kp + k_max; ++k)
            lay.columns_[wrap(k)] = CellKind::Pilot;
    }

    for (int k = 0; k < m; ++k) {
        if (lay.columns_[k] != CellKind::Data) {
            ++lay.non_data_columns_;
            continue;
        }
        for (int l = 0; l < params.n; ++l) lay.data_.emplace_back(k, l);
    }
    return lay;
}

CVec qam_map(std::span<const uint8_t> bits) {
    if (bits.size() % 2 != 0) throw std::invalid_argument("qam_map: odd bit count");
    CVec out(bits.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        const double re = bits[2 * i] ? -kInvSqrt2 : kInvSqrt2;
        const double im = bits[2 * i + 1] ? -kInvSqrt2 : kInvSqrt2;
        out[i] = {re, im};
    }
    return out;
}

std::vector<uint8_t> qam_demap(std::span<const Complex> symbols) {
    std::vector<uint8_t> bits(symbols.size() * 2);
    for (size_t i = 0; i < symbols.size(); ++i) {
        bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

Complex qam_nearest(Complex z) {
    return {z.real() < 0.0 ? -kInvSqrt2 : kInvSqrt2, z.imag() < 0.0 ? -kInvSqrt2 : kInvSqrt2};
}

DDSignal pilot_signal(const FrameLayout& layout) {
    DDSignal x(layout.params());
    const double amp = std::sqrt(layout.e_p() / layout.q());
    for (int kp : layout.pilot_delays()) x.at(kp, 0) += amp;
    return x;
}

Subframe build_subframe(const FrameLayout& layout, std::span<const uint8_t> bits) {
    const auto& locs = layout.data_locations();
    if (bits.size() != 2 * locs.size())
        throw std::invalid_argument("build_subframe: need exactly 2|I| bits");
    Subframe f;
    f.layout = layout;
    f.tx_bits.assign(bits.begin(), bits.end());
    f.tx_symbols = qam_map(bits);
    f.signal = pilot_signal(layout);
    const double amp = locs.empty() ? 0.0 : std::sqrt(layout.e_d() / locs.size());
    for (size_t i = 0; i < locs.size(); ++i)
        f.signal.at(locs[i].first, locs[i].second) += amp * f.tx_symbols[i];
    return f;
}

} // namespace zakotfs
