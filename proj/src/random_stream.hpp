#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace fdoutage::detail {

// splitmix64 output function; used both to derive stream keys and to seed xoshiro.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t purpose,
                                   std::uint64_t sub = 0)
{
    std::uint64_t k = mix64(seed);
    k = mix64(k ^ trial);
    k = mix64(k ^ purpose);
    return mix64(k ^ sub);
}

/// xoshiro256** satisfying UniformRandomBitGenerator; cheap to seed per trial.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t key)
    {
        for (auto& word : s_) {
            key += 0x9e3779b97f4a7c15ULL;
            word = mix64(key);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
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

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

/// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(Xoshiro256& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Exponential with the given rate (mean 1/rate).
inline double exponential(Xoshiro256& gen, double rate)
{
    return -std::log1p(-uniform01(gen)) / rate;
}

}  // namespace fdoutage::detail
