#pragma once

#include <Eigen/Dense>

#include "zakotfs/dd_filter.hpp"
#include "zakotfs/framing.hpp"

namespace zakotfs {

/**
 * Matrix-vector form of the discrete DD input-output relation: column
 * flat(k0,l0) of H is the (flattened) twisted convolution of the filter with
 * a point pulse at (k0,l0). Flat index is k*N + l.
 */
struct ChannelMatrix {
    GridParams params;
    Eigen::MatrixXcd h;

    int flat(int k, int l) const { return k * params.n + l; }
};

ChannelMatrix build_channel_matrix(const DDFilter& filt, const GridParams& params);

struct DetectionResult {
    CVec symbols;               // equalized estimates on the data locations
    std::vector<uint8_t> bits;  // hard decisions, 2 per symbol
};

// MMSE detection of the data symbols: subtracts the predicted pilot
// contribution (through the estimated channel), then solves the regularized
// normal equations over the data columns A = sqrt(E_d/|I|) H_I:
//   x_hat = (A^H A + sigma2 I)^-1 A^H y'
// followed by nearest-constellation demapping.
DetectionResult mmse_detect(const DDSignal& y, const DDFilter& h_hat,
                            const FrameLayout& layout, double sigma2);

} // namespace zakotfs
