#include "bpbe/ppm.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpbe/errors.hpp"

namespace bpbe {
namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

int parse_int(const std::string& tok, const char* what) {
    if (tok.empty()) throw ParseError(std::string("ppm: missing ") + what);
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("ppm: bad ") + what + " '" + tok + "'");
    }
    if (pos != tok.size() || value < 0) {
        throw ParseError(std::string("ppm: bad ") + what + " '" + tok + "'");
    }
    return value;
}

RgbImage read_ppm_stream(std::istream& in) {
    if (next_token(in) != "P6") throw ParseError("ppm: not a binary PPM (P6) file");
    const int width = parse_int(next_token(in), "width");
    const int height = parse_int(next_token(in), "height");
    const int maxval = parse_int(next_token(in), "maxval");
    if (width < 1 || height < 1) throw ParseError("ppm: empty image");
    if (maxval != 255) throw ParseError("ppm: only maxval 255 is supported");
    // The header ends with exactly one whitespace byte, already consumed by
    // next_token; raw samples follow.
    RgbImage img(width, height);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.data.size()) {
        throw ParseError("ppm: truncated pixel data");
    }
    return img;
}

}  // namespace

std::string ppm_to_string(const RgbImage& image) {
    std::ostringstream out;
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data.data()),
              static_cast<std::streamsize>(image.data.size()));
    return out.str();
}

RgbImage ppm_from_string(const std::string& bytes) {
    std::istringstream in(bytes);
    return read_ppm_stream(in);
}

RgbImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return read_ppm_stream(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_ppm(const RgbImage& image, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        const std::string bytes = ppm_to_string(image);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
    }
}

}  // namespace bpbe
