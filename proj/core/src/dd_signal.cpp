#include "zakotfs/dd_signal.hpp"

namespace zakotfs {

DDSignal point_pulse(const GridParams& params, int k0, int l0, Complex amplitude) {
    if (k0 < 0 || k0 >= params.m || l0 < 0 || l0 >= params.n)
        throw std::invalid_argument("point_pulse: (k0,l0) outside the fundamental region");
    DDSignal x(params);
    x.at(k0, l0) = amplitude;
    return x;
}

} // namespace zakotfs
