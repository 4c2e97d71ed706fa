#include "zakotfs/equalizer.hpp"

#include "zakotfs/errors.hpp"

namespace zakotfs {

ChannelMatrix build_channel_matrix(const DDFilter& filt, const GridParams& params) {
    if (!(filt.params() == params))
        throw std::invalid_argument("build_channel_matrix: grids differ");
    const int m = params.m, n = params.n;
    const double mn = static_cast<double>(m) * n;
    ChannelMatrix cm{params, Eigen::MatrixXcd::Zero(m * n, m * n)};

    // Response to a pulse at (k0,l0): tap (dk,dl) lands at the wrapped
    // location with the quasi-periodic phase of the input image and the
    // twisted-convolution phase:
    //   H[(k0+dk, l0+dl) wrapped, (k0,l0)] +=
    //       h[dk,dl] e^{-j2pi nw l0/N} e^{j2pi dl (k0 - nw M)/(MN)},
    // nw = floor((k0+dk)/M).
    for (int k0 = 0; k0 < m; ++k0) {
        for (int dk = filt.k_lo(); dk <= filt.k_hi(); ++dk) {
            const int nw = DDSignal::floor_div(k0 + dk, m);
            const int kr = k0 + dk - nw * m;
            for (int l0 = 0; l0 < n; ++l0) {
                const int col = k0 * n + l0;
                for (int dl = filt.l_lo(); dl <= filt.l_hi(); ++dl) {
                    const Complex tap = filt.at(dk, dl);
                    if (tap == Complex{0.0, 0.0}) continue;
                    const int lr = l0 + dl - DDSignal::floor_div(l0 + dl, n) * n;
                    Complex v = tap;
                    if (nw != 0) v *= cis(-2.0 * kPi * nw * l0 / n);
                    if (dl != 0) v *= cis(2.0 * kPi * dl * (k0 - nw * m) / mn);
                    cm.h(kr * n + lr, col) += v;
                }
            }
        }
    }
    return cm;
}

DetectionResult mmse_detect(const DDSignal& y, const DDFilter& h_hat,
                            const FrameLayout& layout, double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("mmse_detect: sigma2 must be >= 0");
    const GridParams& g = layout.params();
    const int mn = g.grid_size();
    const auto& locs = layout.data_locations();
    const int ni = static_cast<int>(locs.size());

    const ChannelMatrix cm = build_channel_matrix(h_hat, g);

    // residual after removing the predicted pilot contribution
    Eigen::VectorXcd yv(mn);
    for (int k = 0; k < g.m; ++k)
        for (int l = 0; l < g.n; ++l) yv(k * g.n + l) = y.at(k, l);
    const DDSignal pilot = pilot_signal(layout);
    Eigen::VectorXcd pv(mn);
    for (int k = 0; k < g.m; ++k)
        for (int l = 0; l < g.n; ++l) pv(k * g.n + l) = pilot.at(k, l);
    yv -= cm.h * pv;

    if (ni == 0) return {};

    const double amp = std::sqrt(layout.e_d() / ni);
    Eigen::MatrixXcd a(mn, ni);
    for (int c = 0; c < ni; ++c)
        a.col(c) = amp * cm.h.col(cm.flat(locs[c].first, locs[c].second));

    // Rows of A carry at most one nonzero per filter tap; the Gram matrix is
    // accumulated from per-row outer products over those nonzeros.
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(ni, ni);
    {
        std::vector<int> nz;
        std::vector<Complex> val;
        nz.reserve(64);
        val.reserve(64);
        for (int r = 0; r < mn; ++r) {
            nz.clear();
            val.clear();
            for (int c = 0; c < ni; ++c) {
                const Complex v = a(r, c);
                if (v != Complex{0.0, 0.0}) {
                    nz.push_back(c);
                    val.push_back(v);
                }
            }
            for (size_t i = 0; i < nz.size(); ++i) {
                const Complex vi = std::conj(val[i]);
                for (size_t j = i; j < nz.size(); ++j) gram(nz[i], nz[j]) += vi * val[j];
            }
        }
        gram.diagonal().array() += sigma2;
        // mirror the upper triangle
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < i; ++j) gram(i, j) = std::conj(gram(j, i));
    }

    Eigen::VectorXcd rhs = a.adjoint() * yv;
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw detection_error("mmse_detect: normal matrix is numerically singular");
    Eigen::VectorXcd xhat = llt.solve(rhs);

    DetectionResult res;
    res.symbols.resize(ni);
    for (int c = 0; c < ni; ++c) res.symbols[c] = xhat(c);
    res.bits = qam_demap(res.symbols);
    return res;
}

} // namespace zakotfs
