#pragma once

#include "zakotfs/grid.hpp"

namespace zakotfs {

/**
 * Discrete quasi-periodic delay-Doppler signal. Only the fundamental region
 * D = [0,M) x [0,N) is stored; the value anywhere else follows from the
 * extension law
 *
 *     x[k + nM, l + mN] = exp(j 2 pi n l / N) * x[k, l],   (k,l) in D.
 *
 * Grid storage is row-major in k: grid[k*N + l].
 */
class DDSignal {
public:
    DDSignal() = default;
    explicit DDSignal(const GridParams& params)
        : params_(params), grid_(static_cast<size_t>(params.grid_size()), Complex{0.0, 0.0}) {}
    DDSignal(const GridParams& params, CVec grid) : params_(params), grid_(std::move(grid)) {
        if (grid_.size() != static_cast<size_t>(params.grid_size()))
            throw std::invalid_argument("DDSignal: grid size != M*N");
    }

    const GridParams& params() const { return params_; }
    const CVec& grid() const { return grid_; }
    CVec& grid() { return grid_; }

    Complex& at(int k, int l) { return grid_[static_cast<size_t>(k) * params_.n + l]; }
    const Complex& at(int k, int l) const { return grid_[static_cast<size_t>(k) * params_.n + l]; }

    // Quasi-periodic extension, valid for any integer pair.
    Complex extend(int kappa, int lambda) const {
        const int m = params_.m, n = params_.n;
        int nn = floor_div(kappa, m);
        int k = kappa - nn * m;
        int l = lambda - floor_div(lambda, n) * n;
        Complex v = at(k, l);
        if (nn == 0 || l == 0) return v;
        return v * cis(2.0 * kPi * nn * l / n);
    }

    double energy() const {
        double e = 0.0;
        for (const auto& v : grid_) e += std::norm(v);
        return e;
    }

    static int floor_div(int a, int b) {
        int q = a / b, r = a % b;
        return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
    }

private:
    GridParams params_;
    CVec grid_;
};

// Single impulse at (k0, l0) in the fundamental region; together with the
// extension law this generates the full quasi-periodic impulse comb.
DDSignal point_pulse(const GridParams& params, int k0, int l0, Complex amplitude);

} // namespace zakotfs
