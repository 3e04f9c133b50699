#pragma once

#include <cstdint>

namespace dukan {

/// SplitMix64. Used instead of <random> engines because the standard does not
/// pin down distribution outputs across implementations, and reports must be
/// byte-identical for a fixed seed on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [lo, hi], lo <= hi. Modulo bias is irrelevant here:
    /// draws seed small test data, they are not statistics.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    bool next_bool() { return (next_u64() & 1) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace dukan
