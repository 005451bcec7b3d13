#pragma once

#include <cstdint>

namespace trihit {

// Counter-seeded splitmix64 stream: sample `index` always yields the same
// draws regardless of how work is split across threads.
class SampleRng {
public:
    SampleRng(uint64_t seed, uint64_t index)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1))) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // uniform in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace trihit
