#pragma once

#include <cstdint>

namespace qrac {

/// SplitMix64 step: advances `state` and returns the next output word.
/// Used to expand a single 64-bit seed into generator state and to derive
/// independent sub-seeds for parallel tasks.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed: mixes a base seed with a task index so that
/// results are independent of execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (salt + 1));
    return splitmix64(s);
}

/// xoshiro256** (Blackman/Vigna). The algorithm is pinned here, including the
/// SplitMix64 state expansion, so that seeded runs reproduce bit-for-bit
/// across platforms and language ports.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) via the 128-bit multiply reduction
    /// (Lemire); bias is below 2^-64 and the draw sequence stays fixed.
    std::uint64_t below(std::uint64_t bound) noexcept {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace qrac
