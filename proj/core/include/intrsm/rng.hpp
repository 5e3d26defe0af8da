#pragma once

#include <cstdint>

namespace intrsm {

/// splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256++ with value-semantics; one instance per (seed, stream) pair so
/// results are reproducible independently of thread count. Uniform, normal
/// and exponential variates are generated by fixed, library-independent
/// recipes (no implementation-defined std::distributions).
class Rng {
public:
    Rng() : Rng(1, 0) {}
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed ^ (0x6a09e667f3bcc909ull + stream * 0x3c6ef372fe94f82bull);
        for (auto& w : s_) w = splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// uniform on the open interval (0,1)
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

    double exponential() { return -__builtin_log(uniform()); }

    /// Box-Muller, one value per call (pair cache would couple call sites)
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return __builtin_sqrt(-2.0 * __builtin_log(u1)) *
               __builtin_cos(6.28318530717958647693 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace intrsm
