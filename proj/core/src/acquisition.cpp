#include "zakotfs/acquisition.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace zakotfs {

CrystallizationReport check_crystallization(const GridParams& params, double tau_max,
                                            double nu_max, int q) {
    if (tau_max < 0.0 || nu_max < 0.0)
        throw std::invalid_argument("check_crystallization: spreads must be >= 0");
    if (q < 1) throw std::invalid_argument("check_crystallization: Q must be >= 1");
    CrystallizationReport r;
    r.q = q;
    r.k_max = static_cast<int>(std::ceil(params.m * tau_max / params.tau_p));
    r.l_max = static_cast<int>(std::ceil(2.0 * params.n * nu_max / params.nu_p));
    r.delay_ok = r.k_max < params.m;
    r.doppler_ok = r.l_max < params.n;
    r.effective_ok = (r.k_max + 2) * q <= params.m && r.l_max < q * params.n;
    return r;
}

AmbiguitySurface cross_ambiguity(const DDSignal& y, const DDSignal& x, const TapWindow& win) {
    if (!(y.params() == x.params()))
        throw std::invalid_argument("cross_ambiguity: grids differ");
    const int m = y.params().m, n = y.params().n;
    const double mn = static_cast<double>(m) * n;
    AmbiguitySurface a(y.params(), win);
    for (int k = win.k_lo; k <= win.k_hi; ++k) {
        for (int l = win.l_lo; l <= win.l_hi; ++l) {
            Complex acc{0.0, 0.0};
            for (int kq = 0; kq < m; ++kq) {
                const Complex tw = cis(-2.0 * kPi * l * (kq - k) / mn);
                for (int lq = 0; lq < n; ++lq) {
                    const Complex yv = y.at(kq, lq);
                    if (yv == Complex{0.0, 0.0}) continue;
                    acc += yv * std::conj(x.extend(kq - k, lq - l)) * tw;
                }
            }
            a.ref(k, l) = acc;
        }
    }
    return a;
}

AmbiguitySurface auto_ambiguity(const FrameLayout& layout, const TapWindow& win) {
    const DDSignal p = pilot_signal(layout);
    return cross_ambiguity(p, p, win);
}

DDFilter readoff_single_pilot(const DDSignal& y, int k_p, int l_p, double e_p,
                              const TapWindow& win) {
    if (e_p <= 0.0) throw std::invalid_argument("readoff: E_p must be > 0");
    const double mn = static_cast<double>(y.params().m) * y.params().n;
    const double scale = 1.0 / std::sqrt(e_p);
    DDFilter h(y.params(), win.k_lo, win.k_hi, win.l_lo, win.l_hi);
    for (int k = win.k_lo; k <= win.k_hi; ++k)
        for (int l = win.l_lo; l <= win.l_hi; ++l)
            h.ref(k, l) = y.extend(k + k_p, l + l_p) * cis(-2.0 * kPi * k_p * l / mn) * scale;
    return h;
}

std::vector<int> doppler_positions(int l0, int q, int n) {
    const int lo = -(q * n) / 2;
    const int first = lo + (((l0 - lo) % n) + n) % n;
    std::vector<int> pos(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) pos[j] = first + j * n;
    return pos;
}

DDFilter ls_estimate(const DDSignal& y, const FrameLayout& layout, int k_lo, int k_hi,
                     double cond_limit) {
    const GridParams& g = layout.params();
    const int q = layout.q(), n = g.n;
    const double mn = static_cast<double>(g.m) * n;
    const int win_lo = -(q * n) / 2;
    DDFilter h(g, k_lo, k_hi, win_lo, win_lo + q * n - 1);

    const double amp = std::sqrt(layout.e_p() / q);
    Eigen::MatrixXcd sys(q, q);
    Eigen::VectorXcd rhs(q), sol(q);
    for (int l0 = 0; l0 < n; ++l0) {
        const auto pos = doppler_positions(l0, q, n);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                sys(i, j) = amp * cis(2.0 * kPi * pos[j] * layout.pilot_delays()[i] / mn);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
        const double smin = svd.singularValues()(q - 1);
        const double smax = svd.singularValues()(0);
        if (!(smin > 0.0) || smax / smin > cond_limit)
            throw estimation_error("ls_estimate: ill-conditioned pilot system", k_lo, l0);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
        for (int k = k_lo; k <= k_hi; ++k) {
            for (int i = 0; i < q; ++i) rhs(i) = y.extend(k + layout.pilot_delays()[i], l0);
            sol = lu.solve(rhs);
            for (int j = 0; j < q; ++j) h.ref(k, pos[j]) = sol(j);
        }
    }
    return h;
}

DDFilter ls_estimate(const DDSignal& y, const FrameLayout& layout) {
    return ls_estimate(y, layout, -1, layout.k_max(), 1e12);
}

DDFilter ambiguity_estimate(const DDSignal& y, const FrameLayout& layout, int k_lo, int k_hi) {
    if (!layout.regular()) {
        std::string diag = "ambiguity_estimate: requires regular pilot spacing";
        if (layout.q() == 2) {
            diag += " (|det| = " +
                    std::to_string(conditioning_determinant(layout.pilot_delays()[0],
                                                            layout.pilot_delays()[1],
                                                            layout.params().m, layout.e_p())) +
                    " for the equivalent linear system)";
        }
        throw layout_error(diag);
    }
    const GridParams& g = layout.params();
    const int q = layout.q(), n = g.n;
    const int win_lo = -(q * n) / 2;
    TapWindow win{k_lo, k_hi, win_lo, win_lo + q * n - 1};
    const AmbiguitySurface a = cross_ambiguity(y, pilot_signal(layout), win);
    DDFilter h(g, win.k_lo, win.k_hi, win.l_lo, win.l_hi);
    for (int k = win.k_lo; k <= win.k_hi; ++k)
        for (int l = win.l_lo; l <= win.l_hi; ++l) h.ref(k, l) = a.at(k, l) / layout.e_p();
    return h;
}

DDFilter ambiguity_estimate(const DDSignal& y, const FrameLayout& layout) {
    return ambiguity_estimate(y, layout, -1, layout.k_max());
}

double conditioning_determinant(int k_p1, int k_p2, int m, double e_p) {
    const Complex d =
        cis(-2.0 * kPi * k_p1 / m) - cis(-2.0 * kPi * k_p2 / m);
    return e_p / 2.0 * std::abs(d);
}

} // namespace zakotfs
