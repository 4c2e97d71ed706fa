#pragma once

#include <cstdint>
#include <span>

#include "zakotfs/dd_signal.hpp"
#include "zakotfs/errors.hpp"

namespace zakotfs {

// Pilot placement along the delay axis.
struct Spacing {
    enum class Kind { Regular, Custom };
    Kind kind = Kind::Regular;
    std::vector<int> delays;      // Custom only
    bool allow_aliasing = false;  // Custom only: relax min separation to 1

    static Spacing regular() { return {}; }
    static Spacing custom(std::vector<int> d, bool allow_alias = false) {
        return {Kind::Custom, std::move(d), allow_alias};
    }
};

enum class CellKind : uint8_t { Data, Pilot, Guard };

/**
 * Subframe geometry: Q interleaved pilots at delay bins k_p[i] (Doppler bin 0),
 * each surrounded by a pilot strip of delay width k_max+2 and guard strips of
 * width k_max (left) and 1 (right). Strips run parallel to the Doppler axis;
 * the remaining columns carry data. E_d and E_p are the data and pilot
 * energies per subframe.
 */
class FrameLayout {
public:
    FrameLayout() = default;

    const GridParams& params() const { return params_; }
    int q() const { return static_cast<int>(pilot_delays_.size()); }
    const std::vector<int>& pilot_delays() const { return pilot_delays_; }
    int k_max() const { return k_max_; }
    bool regular() const { return regular_; }
    double e_d() const { return e_d_; }
    double e_p() const { return e_p_; }
    double pdr_db() const { return 10.0 * std::log10(e_p_ / e_d_); }

    CellKind column_kind(int k) const { return columns_[static_cast<size_t>(k)]; }
    CellKind cell_kind(int k, int /*l*/) const { return column_kind(k); }

    // data locations in ascending flat order (k*N + l)
    const std::vector<std::pair<int, int>>& data_locations() const { return data_; }
    int data_count() const { return static_cast<int>(data_.size()); }
    int non_data_columns() const { return non_data_columns_; }
    double overhead() const { return static_cast<double>(non_data_columns_) / params_.m; }

    friend FrameLayout layout_interleaved(const GridParams& params, int q, int k_max,
                                          const Spacing& spacing, double e_d, double e_p);

private:
    GridParams params_;
    std::vector<int> pilot_delays_;
    int k_max_ = 0;
    bool regular_ = true;
    double e_d_ = 0.0, e_p_ = 0.0;
    std::vector<CellKind> columns_;
    std::vector<std::pair<int, int>> data_;
    int non_data_columns_ = 0;
};

// Builds the interleaved layout. Regular spacing places k_p[i] = (i-1) M/Q and
// requires Q | M; Custom requires distinct delays with pairwise circular
// separation >= k_max+2 (>= 1 with allow_aliasing). Q (k_max+2) <= M always.
FrameLayout layout_interleaved(const GridParams& params, int q, int k_max,
                               const Spacing& spacing, double e_d, double e_p);

// Convenience: pilot energy from a pilot-to-data power ratio in dB.
inline FrameLayout layout_interleaved_pdr(const GridParams& params, int q, int k_max,
                                          const Spacing& spacing, double e_d, double pdr_db) {
    return layout_interleaved(params, q, k_max, spacing, e_d,
                              e_d * std::pow(10.0, pdr_db / 10.0));
}

// Gray-mapped unit-energy 4-QAM, 2 bits/symbol; 00 -> (1+j)/sqrt(2).
CVec qam_map(std::span<const uint8_t> bits);
std::vector<uint8_t> qam_demap(std::span<const Complex> symbols);
Complex qam_nearest(Complex z);

// sqrt(E_p/Q) impulses at the pilot locations (k_p[i], 0).
DDSignal pilot_signal(const FrameLayout& layout);

struct Subframe {
    DDSignal signal;
    FrameLayout layout;
    std::vector<uint8_t> tx_bits;
    CVec tx_symbols; // one per data location, in data_locations() order
};

// Assembles sqrt(E_d/|I|) * data pulses + sqrt(E_p/Q) * pilot pulses.
// Requires |bits| = 2 |I|.
Subframe build_subframe(const FrameLayout& layout, std::span<const uint8_t> bits);

} // namespace zakotfs
