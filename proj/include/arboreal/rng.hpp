#pragma once

#include <cstdint>

namespace arboreal {

// Counter-based stream built on splitmix64. A stream is keyed by a sequence
// of 64-bit ids; draws are a pure function of (key, counter), so forks keyed
// by (seed, sample, t, k) are reproducible and order-independent under
// parallel execution.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_(mix(seed)) {}

    RngStream derive(std::uint64_t id) const {
        RngStream s(*this);
        s.key_ = mix(s.key_ ^ mix(id + 0x9E3779B97F4A7C15ULL));
        s.counter_ = 0;
        return s;
    }
    RngStream derive(std::uint64_t a, std::uint64_t b) const { return derive(a).derive(b); }
    RngStream derive(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return derive(a).derive(b).derive(c);
    }

    std::uint64_t next_u64() { return mix(key_ + 0xA0761D6478BD642FULL * ++counter_); }

    // Uniform in [0, 1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Multiply-shift rejection-free mapping; bias is < 2^-64 * n.
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bool() { return (next_u64() & 1ULL) != 0; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace arboreal
