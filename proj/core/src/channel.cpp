#include "zakotfs/channel.hpp"

#include <cmath>

namespace zakotfs {

PhysicalChannel sample_veh_a(double nu_max, Rng& rng) {
    if (nu_max < 0.0) throw std::invalid_argument("sample_veh_a: nu_max must be >= 0");
    double total = 0.0;
    std::array<double, VehAProfile::kPaths> lin{};
    for (int i = 0; i < VehAProfile::kPaths; ++i) {
        lin[i] = std::pow(10.0, VehAProfile::powers_db[i] / 10.0);
        total += lin[i];
    }
    PhysicalChannel chan;
    chan.paths.resize(VehAProfile::kPaths);
    for (int i = 0; i < VehAProfile::kPaths; ++i) {
        auto& p = chan.paths[i];
        p.gain = rng.cgauss(lin[i] / total);
        p.delay_s = VehAProfile::delays_us[i] * 1e-6;
        const double theta = -kPi + 2.0 * kPi * rng.uniform();
        p.doppler_hz = nu_max * std::cos(theta);
    }
    return chan;
}

TapWindow support_bounds(double tau_max, double nu_max, const GridParams& params, int margin) {
    if (tau_max < 0.0 || nu_max < 0.0)
        throw std::invalid_argument("support_bounds: spreads must be >= 0");
    const int k_max = static_cast<int>(std::ceil(params.m * tau_max / params.tau_p));
    const int l_max = static_cast<int>(std::ceil(2.0 * params.n * nu_max / params.nu_p));
    const int l_half = (l_max + 1) / 2;
    return TapWindow{-margin, k_max + margin, -l_half - margin, l_half + margin};
}

namespace {

// Composite Simpson nodes/weights at `per_cell` nodes per unit step over
// [-extent, extent] (node count forced even-interval).
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;

    Quadrature(double extent, int per_cell) {
        int n = static_cast<int>(std::lround(2.0 * extent * per_cell));
        if (n % 2 == 1) ++n;
        if (n < 2) n = 2;
        const double h = 2.0 * extent / n;
        x.resize(n + 1);
        w.resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            x[i] = -extent + i * h;
            double c = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            w[i] = c * h / 3.0;
        }
    }
};

} // namespace

DDFilter effective_filter(const PhysicalChannel& chan, const RRCFilterSpec& spec,
                          const TapWindow& win) {
    if (chan.paths.empty())
        throw std::invalid_argument("effective_filter: channel has no paths");
    const GridParams& g = spec.params;
    const double B = g.bandwidth(), T = g.duration();

    // The factorizable w_tx and the matched w_rx make the per-path integrand
    // separable: per output tap and path,
    //   h_eff(tau,nu) += h_i BT e^{j2pi nu_i (tau - tau_i)} * Ai(tau) * Bi(nu, tau)
    //   Ai(tau)     = int a(x) a(B(tau - tau_i) - x) e^{-j2pi nu_i x / B} dx / B
    //   Bi(nu, tau) = int b(x) b((nu - nu_i) T - x) e^{+j2pi (x/T) tau} dx / T
    // where a = rrc_{beta_tau}, b = rrc_{beta_nu} on dimensionless arguments.
    Quadrature q(spec.cutoff, spec.nodes_per_cell);
    const int nq = static_cast<int>(q.x.size());
    std::vector<double> a_node(nq), b_node(nq);
    for (int i = 0; i < nq; ++i) {
        a_node[i] = rrc(q.x[i], spec.beta_tau);
        b_node[i] = rrc(q.x[i], spec.beta_nu);
    }

    DDFilter h(g, win.k_lo, win.k_hi, win.l_lo, win.l_hi);
    std::vector<Complex> bphase(nq);
    for (const auto& path : chan.paths) {
        for (int k = win.k_lo; k <= win.k_hi; ++k) {
            const double tau = k / B;
            const double dtau = tau - path.delay_s;
            Complex ai{0.0, 0.0};
            for (int i = 0; i < nq; ++i) {
                ai += q.w[i] * a_node[i] * rrc(B * dtau - q.x[i], spec.beta_tau) *
                      cis(-2.0 * kPi * path.doppler_hz * q.x[i] / B);
            }
            ai /= B;
            // e^{j2pi (x/T) tau} per node, stepped multiplicatively over l-free tau
            for (int i = 0; i < nq; ++i) bphase[i] = cis(2.0 * kPi * q.x[i] / T * tau);
            const Complex common =
                path.gain * B * T * cis(2.0 * kPi * path.doppler_hz * dtau) * ai;
            for (int l = win.l_lo; l <= win.l_hi; ++l) {
                const double dnu = l / T - path.doppler_hz;
                Complex bi{0.0, 0.0};
                for (int i = 0; i < nq; ++i) {
                    bi += q.w[i] * b_node[i] * rrc(dnu * T - q.x[i], spec.beta_nu) * bphase[i];
                }
                bi /= T;
                h.ref(k, l) += common * bi;
            }
        }
    }
    return h;
}

DDFilter effective_filter_reference(const PhysicalChannel& chan, const RRCFilterSpec& spec,
                                    const TapWindow& win) {
    if (chan.paths.empty())
        throw std::invalid_argument("effective_filter_reference: channel has no paths");
    const GridParams& g = spec.params;
    const double B = g.bandwidth(), T = g.duration();
    const double sqrtBT = std::sqrt(B * T);

    // (w_rx *s h_phy) *s w_tx with u = w_rx *s h_phy collapsed analytically:
    //   u(t', v') = sum_i h_i w_rx(t'-tau_i, v'-nu_i) e^{j2pi (v'-nu_i) tau_i}
    //   h_eff(tau, nu) = iint u(t',v') w_tx(tau-t', nu-v') e^{j2pi v'(tau-t')} dt' dv'
    // evaluated as a raw 2D Simpson sum with nodes centered at each path point,
    // so node placement differs from effective_filter for fractional delays.
    Quadrature q(spec.cutoff, spec.nodes_per_cell);
    const int nq = static_cast<int>(q.x.size());

    DDFilter h(g, win.k_lo, win.k_hi, win.l_lo, win.l_hi);
    for (const auto& path : chan.paths) {
        std::vector<double> wrx_a(nq), wrx_b(nq);
        for (int i = 0; i < nq; ++i) {
            wrx_a[i] = rrc(q.x[i], spec.beta_tau);
            wrx_b[i] = rrc(q.x[i], spec.beta_nu);
        }
        for (int k = win.k_lo; k <= win.k_hi; ++k) {
            const double tau = k / B;
            for (int l = win.l_lo; l <= win.l_hi; ++l) {
                const double nu = l / T;
                Complex acc{0.0, 0.0};
                for (int it = 0; it < nq; ++it) {
                    const double tp = path.delay_s + q.x[it] / B; // t' node
                    const double wa = wrx_a[it];
                    if (wa == 0.0) continue;
                    const double wtx_a = rrc(B * (tau - tp), spec.beta_tau);
                    if (wtx_a == 0.0) continue;
                    for (int iv = 0; iv < nq; ++iv) {
                        const double vp = path.doppler_hz + q.x[iv] / T; // v' node
                        const double wb = wrx_b[iv];
                        if (wb == 0.0) continue;
                        const double wtx_b = rrc((nu - vp) * T, spec.beta_nu);
                        if (wtx_b == 0.0) continue;
                        // w_rx(s,m) = sqrt(BT) a(Bs) b(mT) e^{j2pi m s}
                        const double sig = q.x[it] / B, mu = q.x[iv] / T;
                        const Complex val =
                            sqrtBT * wa * wb * cis(2.0 * kPi * mu * sig) // w_rx
                            * cis(2.0 * kPi * mu * path.delay_s)          // u phase
                            * sqrtBT * wtx_a * wtx_b                      // w_tx
                            * cis(2.0 * kPi * vp * (tau - tp));           // twist
                        acc += q.w[it] * q.w[iv] * val;
                    }
                }
                h.ref(k, l) += path.gain * acc / (B * T);
            }
        }
    }
    return h;
}

DDSignal add_awgn(const DDSignal& y, double sigma2, Rng& rng) {
    if (sigma2 < 0.0) throw std::invalid_argument("add_awgn: sigma2 must be >= 0");
    DDSignal out = y;
    if (sigma2 == 0.0) return out;
    for (auto& v : out.grid()) v += rng.cgauss(sigma2);
    return out;
}

} // namespace zakotfs
