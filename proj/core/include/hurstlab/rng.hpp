#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hurstlab {

// splitmix64 step (Vigna / Steele et al.); used for seeding and stream splits.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with an explicit Box-Muller normal generator. The stdlib
// engines are fine for single streams, but give no splitting; replica
// independence here comes from hashing (master_seed, tag, index) into a
// fresh state. Output is deterministic for a fixed platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        have_spare_ = false;
    }

    std::uint64_t next_u64() noexcept {
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

    // Uniform on (0, 1): 53-bit mantissa, never exactly 0.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; one spare value is cached.
    double next_normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// FNV-1a over the tag, mixed with the master seed and replica index through
// splitmix64. Distinct (tag, index) pairs get well-separated stream seeds.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view tag,
                                        std::uint64_t index) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = master_seed;
    std::uint64_t mixed = splitmix64(state) ^ h;
    state = mixed + 0x632be59bd9b4e019ULL * (index + 1);
    return splitmix64(state);
}

inline RngStream derive_stream(std::uint64_t master_seed, std::string_view tag,
                               std::uint64_t index) noexcept {
    return RngStream(derive_stream_seed(master_seed, tag, index));
}

}  // namespace hurstlab
