#pragma once

#include <string>

#include "bpbe/keys.hpp"

namespace bpbe {

// Key files are plain text, one "name = hex" assignment per line, '#' comments.
// Conventional files carry k1..k4 and k5; proposed files carry k1_r..k4_b and
// k5. serialize(parse(text)) round-trips the bundle exactly.

KeyBundle parse_key_file(const std::string& text);
std::string serialize_key_file(const KeyBundle& keys);

KeyBundle load_key_file(const std::string& path);
void save_key_file(const KeyBundle& keys, const std::string& path);

}  // namespace bpbe
