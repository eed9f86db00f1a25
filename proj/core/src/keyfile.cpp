#include "bpbe/keyfile.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bpbe/errors.hpp"

namespace bpbe {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_hex(const std::string& value, const std::string& name) {
    if (value.empty() || value.size() > 16 ||
        value.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
        throw ParseError("key file: bad hex value for " + name);
    }
    return std::stoull(value, nullptr, 16);
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

KeyBundle parse_key_file(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("key file: expected name = value: " + line);
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kv.emplace(name, value).second) {
            throw ParseError("key file: duplicate entry " + name);
        }
    }

    const auto require = [&](const std::string& name) {
        const auto it = kv.find(name);
        if (it == kv.end()) throw ParseError("key file: missing " + name);
        const std::string value = it->second;
        kv.erase(it);
        return value;
    };

    KeyBundle keys;
    keys.mode = mode_from_string(require("mode"));
    if (keys.mode == Mode::Conventional) {
        keys.k1.fill(parse_hex(require("k1"), "k1"));
        keys.k2.fill(parse_hex(require("k2"), "k2"));
        keys.k3.fill(parse_hex(require("k3"), "k3"));
        keys.k4.fill(parse_hex(require("k4"), "k4"));
    } else {
        static constexpr const char* kChannels[] = {"r", "g", "b"};
        std::array<std::array<std::uint64_t, 3>*, 4> groups = {&keys.k1, &keys.k2, &keys.k3,
                                                               &keys.k4};
        for (int g = 0; g < 4; ++g) {
            for (int c = 0; c < 3; ++c) {
                const std::string name =
                    "k" + std::to_string(g + 1) + "_" + kChannels[c];
                (*groups[g])[c] = parse_hex(require(name), name);
            }
        }
    }
    keys.k5 = parse_hex(require("k5"), "k5");
    if (!kv.empty()) throw ParseError("key file: unknown entry " + kv.begin()->first);
    return keys;
}

std::string serialize_key_file(const KeyBundle& keys) {
    std::ostringstream out;
    out << "mode = " << to_string(keys.mode) << "\n";
    if (keys.mode == Mode::Conventional) {
        out << "k1 = " << hex16(keys.k1[0]) << "\n"
            << "k2 = " << hex16(keys.k2[0]) << "\n"
            << "k3 = " << hex16(keys.k3[0]) << "\n"
            << "k4 = " << hex16(keys.k4[0]) << "\n";
    } else {
        static constexpr const char* kChannels[] = {"r", "g", "b"};
        const std::array<const std::array<std::uint64_t, 3>*, 4> groups = {&keys.k1, &keys.k2,
                                                                           &keys.k3, &keys.k4};
        for (int g = 0; g < 4; ++g) {
            for (int c = 0; c < 3; ++c) {
                out << "k" << g + 1 << "_" << kChannels[c] << " = " << hex16((*groups[g])[c])
                    << "\n";
            }
        }
    }
    out << "k5 = " << hex16(keys.k5) << "\n";
    return out.str();
}

KeyBundle load_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_key_file(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_key_file(const KeyBundle& keys, const std::string& path) {
    namespace fs = std::filesystem;
    fs::path tmp(path);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << serialize_key_file(keys);
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
    }
}

}  // namespace bpbe
