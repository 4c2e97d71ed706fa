#include "zakotfs/td.hpp"

#include <cmath>

namespace zakotfs {

namespace {

constexpr int kInterpHalfWidth = 32;

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

} // namespace

Complex interp_sample(const TDSignal& s, double t) {
    const double x = (t - s.t0) * s.rate;
    const int n0 = static_cast<int>(std::floor(x));
    if (n0 < -kInterpHalfWidth || n0 >= static_cast<int>(s.samples.size()) + kInterpHalfWidth)
        return {0.0, 0.0};
    const double frac = x - n0;
    if (frac < 1e-12 && n0 >= 0 && n0 < static_cast<int>(s.samples.size()))
        return s.samples[n0];
    Complex acc{0.0, 0.0};
    const int lo = n0 - kInterpHalfWidth + 1, hi = n0 + kInterpHalfWidth;
    for (int n = std::max(lo, 0); n <= std::min(hi, static_cast<int>(s.samples.size()) - 1); ++n) {
        const double d = x - n;
        const double w = 0.5 * (1.0 + std::cos(kPi * d / (kInterpHalfWidth + 1)));
        acc += s.samples[n] * (sinc(d) * w);
    }
    return acc;
}

TDSignal td_realize(const DDSignal& x, const RRCFilterSpec& spec, int oversample) {
    if (oversample < 2) throw std::invalid_argument("td_realize: oversample must be >= 2");
    const GridParams& g = x.params();
    const double B = g.bandwidth(), T = g.duration();
    const int m = g.m, n = g.n;
    const double mn = static_cast<double>(m) * n;

    TDSignal s;
    s.rate = oversample * spec.b_prime();
    const double half = spec.t_prime() / 2.0 + spec.cutoff / B;
    s.t0 = -half;
    const size_t nsamp = static_cast<size_t>(std::ceil(2.0 * half * s.rate)) + 1;
    s.samples.assign(nsamp, Complex{0.0, 0.0});

    // Doppler-period integral of the shaped comb. Tiling the integral over the
    // comb replicas reduces it to one quadrature of the Doppler pulse per
    // delay-comb index k:
    //   c_k = [sum_l x(k, l)] * (1/T) int b(u) e^{j 2 pi u k/(MN)} du.
    struct Node {
        double x, wb;
    };
    std::vector<Node> nodes;
    {
        int nq = static_cast<int>(std::lround(2.0 * spec.cutoff * spec.nodes_per_cell));
        if (nq % 2 == 1) ++nq;
        const double h = 2.0 * spec.cutoff / nq;
        nodes.resize(nq + 1);
        for (int i = 0; i <= nq; ++i) {
            const double xi = -spec.cutoff + i * h;
            const double c = (i == 0 || i == nq) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            nodes[i] = {xi, c * h / 3.0 * rrc(xi, spec.beta_nu)};
        }
    }

    const int k_comb = static_cast<int>(std::ceil((1.0 + spec.beta_nu) / 2.0 * mn)) +
                       static_cast<int>(std::ceil(spec.cutoff)) + 1;
    const double scale = std::sqrt(B * T * g.tau_p) / T;
    for (int k = -k_comb; k <= k_comb; ++k) {
        Complex xk{0.0, 0.0};
        for (int l = 0; l < n; ++l) xk += x.extend(k, l);
        if (xk == Complex{0.0, 0.0}) continue;
        Complex quad{0.0, 0.0};
        const double phi = static_cast<double>(k) / mn;
        for (const auto& nd : nodes) quad += nd.wb * cis(2.0 * kPi * nd.x * phi);
        const Complex ck = scale * xk * quad;
        if (std::abs(ck) < 1e-16) continue;
        // accumulate a(B t - k) ck over samples with |B t - k| <= cutoff
        const double t_lo = (k - spec.cutoff) / B, t_hi = (k + spec.cutoff) / B;
        int j_lo = std::max(0, static_cast<int>(std::ceil((t_lo - s.t0) * s.rate)));
        int j_hi = std::min(static_cast<int>(nsamp) - 1,
                            static_cast<int>(std::floor((t_hi - s.t0) * s.rate)));
        for (int j = j_lo; j <= j_hi; ++j) {
            const double t = s.t0 + j / s.rate;
            s.samples[j] += ck * rrc(B * t - k, spec.beta_tau);
        }
    }
    return s;
}

TDSignal apply_physical_channel_td(const TDSignal& s, const PhysicalChannel& chan) {
    TDSignal r;
    r.t0 = s.t0;
    r.rate = s.rate;
    r.samples.assign(s.samples.size(), Complex{0.0, 0.0});
    for (const auto& p : chan.paths) {
        for (size_t j = 0; j < r.samples.size(); ++j) {
            const double t = s.t0 + j / s.rate;
            const Complex v = interp_sample(s, t - p.delay_s);
            if (v == Complex{0.0, 0.0}) continue;
            r.samples[j] += p.gain * v * cis(2.0 * kPi * p.doppler_hz * (t - p.delay_s));
        }
    }
    return r;
}

TDSignal matched_filter_td(const TDSignal& r, const RRCFilterSpec& spec) {
    const double B = spec.params.bandwidth(), T = spec.params.duration();
    const int nh = static_cast<int>(std::ceil(spec.cutoff / B * r.rate));
    std::vector<double> fir(2 * nh + 1);
    for (int i = -nh; i <= nh; ++i) fir[i + nh] = rrc(B * i / r.rate, spec.beta_tau) / r.rate;

    TDSignal out;
    out.t0 = r.t0;
    out.rate = r.rate;
    const int ns = static_cast<int>(r.samples.size());
    out.samples.assign(r.samples.size(), Complex{0.0, 0.0});
    const double amp = std::sqrt(B * T) / T;
    for (int j = 0; j < ns; ++j) {
        const double t = r.t0 + j / r.rate;
        const double wnd = rrc_spectrum(t / T, spec.beta_nu);
        if (wnd == 0.0) continue;
        Complex acc{0.0, 0.0};
        const int lo = std::max(-nh, j - ns + 1), hi = std::min(nh, j);
        for (int i = lo; i <= hi; ++i) acc += fir[i + nh] * r.samples[j - i];
        out.samples[j] = amp * wnd * acc;
    }
    return out;
}

ZakGrid zak_transform(const TDSignal& s, const GridParams& params) {
    if (s.samples.empty() || s.duration() < params.tau_p)
        throw std::invalid_argument("zak_transform: signal extent below one delay period");
    ZakGrid z;
    z.params = params;
    z.tau_step = 1.0 / s.rate;
    z.n_tau = static_cast<int>(std::floor(params.tau_p * s.rate));
    z.values.assign(static_cast<size_t>(z.n_tau) * params.n, Complex{0.0, 0.0});
    const double t_begin = s.t0, t_end = s.t0 + s.duration();
    const int n_lo = static_cast<int>(std::floor(t_begin / params.tau_p)) - 1;
    const int n_hi = static_cast<int>(std::ceil(t_end / params.tau_p)) + 1;
    const double sq = std::sqrt(params.tau_p);
    std::vector<Complex> reps;
    for (int i = 0; i < z.n_tau; ++i) {
        const double tau = i * z.tau_step;
        reps.clear();
        for (int nn = n_lo; nn <= n_hi; ++nn) reps.push_back(interp_sample(s, tau + nn * params.tau_p));
        for (int l = 0; l < params.n; ++l) {
            Complex acc{0.0, 0.0};
            for (int nn = n_lo; nn <= n_hi; ++nn)
                acc += reps[nn - n_lo] * cis(-2.0 * kPi * nn * l / static_cast<double>(params.n));
            z.values[static_cast<size_t>(i) * params.n + l] = sq * acc;
        }
    }
    return z;
}

DDSignal zak_sample_lattice(const TDSignal& s, const GridParams& params) {
    if (s.samples.empty() || s.duration() < params.tau_p)
        throw std::invalid_argument("zak_sample_lattice: signal extent below one delay period");
    DDSignal y(params);
    const double t_begin = s.t0, t_end = s.t0 + s.duration();
    const int n_lo = static_cast<int>(std::floor(t_begin / params.tau_p)) - 1;
    const int n_hi = static_cast<int>(std::ceil(t_end / params.tau_p)) + 1;
    const double sq = std::sqrt(params.tau_p);
    std::vector<Complex> reps;
    for (int k = 0; k < params.m; ++k) {
        const double tau = k * params.delay_res();
        reps.clear();
        for (int nn = n_lo; nn <= n_hi; ++nn) reps.push_back(interp_sample(s, tau + nn * params.tau_p));
        for (int l = 0; l < params.n; ++l) {
            Complex acc{0.0, 0.0};
            for (int nn = n_lo; nn <= n_hi; ++nn)
                acc += reps[nn - n_lo] * cis(-2.0 * kPi * nn * l / static_cast<double>(params.n));
            y.at(k, l) = sq * acc;
        }
    }
    return y;
}

double papr_db(const TDSignal& s, double duration) {
    double peak = 0.0;
    for (const auto& v : s.samples) peak = std::max(peak, std::norm(v));
    if (peak == 0.0) throw std::invalid_argument("papr_db: zero signal");
    const double avg = s.energy() / duration;
    return 10.0 * std::log10(peak / avg);
}

} // namespace zakotfs
