#include "bpbe/keystream.hpp"

#include <cassert>
#include <numeric>

namespace bpbe {

std::uint64_t Stream::next_bounded(std::uint64_t bound) {
    assert(bound >= 1);
    // floor(2^64 / bound) * bound == 2^64 - (2^64 mod bound). A threshold of
    // zero encodes 2^64 itself, i.e. no rejection.
    const std::uint64_t residue = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t v = next();
    if (residue != 0) {
        const std::uint64_t limit = 0 - residue;
        while (v >= limit) v = next();
    }
    return v % bound;
}

std::vector<std::uint32_t> keyed_permutation(std::uint64_t seed, std::uint32_t length) {
    std::vector<std::uint32_t> p(length);
    std::iota(p.begin(), p.end(), 0u);
    if (length < 2) return p;
    Stream s(seed);
    for (std::uint32_t i = length - 1; i >= 1; --i) {
        const auto j = static_cast<std::uint32_t>(s.next_bounded(i + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& p) {
    std::vector<std::uint32_t> inv(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

}  // namespace bpbe
