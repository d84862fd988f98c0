#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace stbc {

// splitmix64 finalizer, used for seeding and stream derivation
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with explicit Box-Muller Gaussians. Every consumer owns its
/// own instance; independent streams are derived from (seed, indices) so that
/// parallel scheduling cannot change the sample sequence of any one stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& s : state_) {
            z = mix64(z);
            s = z;
        }
    }

    /// Stream derived from a master seed and up to three indices
    /// (e.g. master, snr index, trial index). Order-independent.
    static Rng stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
        std::uint64_t z = mix64(master);
        z = mix64(z ^ (0x9e3779b97f4a7c15ULL + a));
        z = mix64(z ^ (0xbf58476d1ce4e5b9ULL + b));
        z = mix64(z ^ (0x94d049bb133111ebULL + c));
        return Rng(z);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// uniform double in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// N(0, 1) via Box-Muller; pairs are generated together and cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double z0, z1;
        gaussian_pair(z0, z1);
        spare_ = z1;
        have_spare_ = true;
        return z0;
    }

    /// circularly-symmetric complex Gaussian CN(0, 1): variance 1/2 per real dimension
    std::complex<double> cgaussian() {
        double z0, z1;
        gaussian_pair(z0, z1);
        constexpr double half = 0.70710678118654752440;
        return {z0 * half, z1 * half};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void gaussian_pair(double& z0, double& z1) {
        // u1 in (0,1] keeps the log finite
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        z0 = r * std::cos(phi);
        z1 = r * std::sin(phi);
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace stbc
