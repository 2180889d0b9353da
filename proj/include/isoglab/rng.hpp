#pragma once

#include <cstdint>

namespace isoglab {

// Deterministic xorshift64* generator. Update: s ^= s>>12; s ^= s<<25;
// s ^= s>>27; output s * 0x2545F4914F6CDD1D. A zero seed is remapped to
// a fixed nonzero constant so the state never collapses.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

    uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
    uint64_t below(uint64_t bound) {
        uint64_t limit = bound * (~0ull / bound);
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    // Uniform in [lo, hi] inclusive.
    uint64_t in_range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    bool coin() { return next() & 1; }

private:
    uint64_t state_;
};

}  // namespace isoglab
