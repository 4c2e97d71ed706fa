#include "zakotfs/dd_filter.hpp"

namespace zakotfs {

DDFilter delta_filter(const GridParams& params, int k0, int l0, Complex amplitude) {
    DDFilter h(params, k0, k0, l0, l0);
    h.ref(k0, l0) = amplitude;
    return h;
}

DDSignal twisted_convolve(const DDFilter& h, const DDSignal& x) {
    if (!(h.params() == x.params()))
        throw std::invalid_argument("twisted_convolve: filter and signal grids differ");
    const int m = x.params().m, n = x.params().n;
    const double mn = static_cast<double>(m) * n;
    DDSignal y(x.params());
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < n; ++l) {
            Complex acc{0.0, 0.0};
            for (int kp = h.k_lo(); kp <= h.k_hi(); ++kp) {
                for (int lp = h.l_lo(); lp <= h.l_hi(); ++lp) {
                    const Complex tap = h.at(kp, lp);
                    if (tap == Complex{0.0, 0.0}) continue;
                    Complex v = x.extend(k - kp, l - lp);
                    if (lp != 0) v *= cis(2.0 * kPi * lp * (k - kp) / mn);
                    acc += tap * v;
                }
            }
            y.at(k, l) = acc;
        }
    }
    return y;
}

DDFilter twisted_convolve_filters(const DDFilter& a, const DDFilter& b) {
    if (!(a.params() == b.params()))
        throw std::invalid_argument("twisted_convolve_filters: grids differ");
    const double mn = static_cast<double>(a.params().m) * a.params().n;
    DDFilter c(a.params(), a.k_lo() + b.k_lo(), a.k_hi() + b.k_hi(),
               a.l_lo() + b.l_lo(), a.l_hi() + b.l_hi());
    for (int ka = a.k_lo(); ka <= a.k_hi(); ++ka) {
        for (int la = a.l_lo(); la <= a.l_hi(); ++la) {
            const Complex ta = a.at(ka, la);
            if (ta == Complex{0.0, 0.0}) continue;
            for (int kb = b.k_lo(); kb <= b.k_hi(); ++kb) {
                for (int lb = b.l_lo(); lb <= b.l_hi(); ++lb) {
                    const Complex tb = b.at(kb, lb);
                    if (tb == Complex{0.0, 0.0}) continue;
                    // c[ka+kb, la+lb] += a[ka,la] b[kb,lb] e^{j2pi la kb/(MN)}
                    c.ref(ka + kb, la + lb) += ta * tb * cis(2.0 * kPi * la * kb / mn);
                }
            }
        }
    }
    return c;
}

} // namespace zakotfs
