#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "zakotfs/grid.hpp"

namespace zakotfs {

// xoshiro256** with splitmix64 seeding. Draws are bit-reproducible across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    uint32_t bit() { return static_cast<uint32_t>(next() >> 63); }

    // standard normal via Box-Muller
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * kPi * uniform();
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    // zero-mean circularly symmetric complex Gaussian with E|z|^2 = var
    Complex cgauss(double var) {
        const double s = std::sqrt(var / 2.0);
        return {s * gauss(), s * gauss()};
    }

    // Derives a decorrelated stream seed from (master, trial, purpose) so that
    // parallel trial scheduling cannot reorder randomness.
    static uint64_t derive(uint64_t master, uint64_t trial, std::string_view purpose) {
        uint64_t h = 0xcbf29ce484222325ull; // FNV-1a over the purpose tag
        for (char c : purpose) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ull;
        }
        uint64_t x = master;
        uint64_t a = splitmix64(x);
        x = a ^ h;
        a = splitmix64(x);
        x = a + 0x9e3779b97f4a7c15ull * (trial + 1);
        return splitmix64(x);
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace zakotfs
