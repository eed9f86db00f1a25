#pragma once

#include <cstdint>
#include <vector>

namespace bpbe {

/// Deterministic keyed 64-bit stream (SplitMix64 successor function).
///
/// Every transform step owns one Stream per (process, channel) pair, seeded by
/// its subkey, so ciphertexts are exactly reproducible from a KeyBundle alone.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound). Rejection sampling: values at or above the
    /// largest multiple of `bound` below 2^64 are discarded and redrawn, so
    /// every residue is exactly equiprobable (no modulo bias).
    std::uint64_t next_bounded(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// One uniformly drawn permutation of [0, length), via Fisher-Yates driven by
/// a fresh Stream(seed). Consumes exactly length-1 bounded draws.
std::vector<std::uint32_t> keyed_permutation(std::uint64_t seed, std::uint32_t length);

/// Index inverse: out[p[i]] = i.
std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& p);

}  // namespace bpbe
