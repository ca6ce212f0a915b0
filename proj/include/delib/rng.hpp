#pragma once
#include <cstdint>

namespace delib {

// SplitMix64 (Steele, Lea & Flood; the generator behind Java's
// SplittableRandom). This is the pinned RNG for everything randomized in
// this project: 64-bit state, no platform-dependent behavior, and cheap
// enough to reseed once per bootstrap iteration. Do not swap it out;
// seeded outputs are part of the reproducibility contract.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n) without rejection (Lemire multiply-shift).
    // Bias is bounded by n / 2^64, irrelevant at the sample counts used here.
    uint64_t next_below(uint64_t n) {
        using u128 = unsigned __int128;
        return static_cast<uint64_t>((static_cast<u128>(next()) * static_cast<u128>(n)) >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

// SplitMix64 finalizer, used to spread user seeds before deriving streams.
inline uint64_t mix64(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Sub-stream for one unit of work (e.g. a bootstrap iteration). The stream
// depends only on (seed, index), never on evaluation order, so parallel
// schedules reproduce the serial result bit for bit. The initial state is a
// hash of both inputs; an affine-in-index seed would put all streams on one
// shared state progression (SplitMix64 advances by a fixed increment) and
// collapse the bootstrap distribution.
inline SplitMix64 stream_at(uint64_t seed, uint64_t index) {
    return SplitMix64(mix64(mix64(seed) + mix64(index + 0x9E3779B97F4A7C15ull)));
}

} // namespace delib
