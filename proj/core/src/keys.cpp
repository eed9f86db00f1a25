#include "bpbe/keys.hpp"

#include "bpbe/errors.hpp"
#include "bpbe/keystream.hpp"

namespace bpbe {

std::string to_string(Mode mode) {
    return mode == Mode::Conventional ? "conventional" : "proposed";
}

Mode mode_from_string(const std::string& s) {
    if (s == "conventional") return Mode::Conventional;
    if (s == "proposed") return Mode::Proposed;
    throw ParseError("unknown mode '" + s + "' (expected conventional or proposed)");
}

KeyBundle derive_bundle(Mode mode, std::uint64_t seed) {
    Stream s(seed);
    KeyBundle keys;
    keys.mode = mode;
    if (mode == Mode::Conventional) {
        for (auto* k : {&keys.k1, &keys.k2, &keys.k3, &keys.k4}) {
            k->fill(s.next());
        }
    } else {
        for (auto* k : {&keys.k1, &keys.k2, &keys.k3, &keys.k4}) {
            for (auto& channel_key : *k) channel_key = s.next();
        }
    }
    keys.k5 = s.next();
    return keys;
}

}  // namespace bpbe
