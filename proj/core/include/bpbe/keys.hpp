#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace bpbe {

enum class Mode {
    Conventional,  // K1..K4 shared by the three color channels
    Proposed,      // independent per-channel K1..K4
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// The named subkeys driving all randomness. Channel order is R, G, B.
/// In Conventional mode the three channel entries of k1..k4 are identical;
/// k5 (color shuffle) is a single shared subkey in both modes.
struct KeyBundle {
    Mode mode = Mode::Conventional;
    std::array<std::uint64_t, 3> k1{};  // positional scrambling
    std::array<std::uint64_t, 3> k2{};  // rotation
    std::array<std::uint64_t, 3> k3{};  // flip
    std::array<std::uint64_t, 3> k4{};  // negative-positive
    std::uint64_t k5 = 0;               // color shuffle

    bool channel_keys_shared() const {
        auto same = [](const std::array<std::uint64_t, 3>& k) {
            return k[0] == k[1] && k[1] == k[2];
        };
        return same(k1) && same(k2) && same(k3) && same(k4);
    }
};

/// Derive a full bundle by drawing successive values from Stream(seed).
/// Conventional: 5 draws (k1, k2, k3, k4, k5). Proposed: 13 draws
/// (k1 R,G,B then k2 R,G,B then k3 R,G,B then k4 R,G,B then k5).
KeyBundle derive_bundle(Mode mode, std::uint64_t seed);

}  // namespace bpbe
