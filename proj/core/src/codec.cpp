#include "bpbe/codec.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>

#include "bpbe/errors.hpp"

namespace bpbe {
namespace {

// 8-bit parameters: thresholds 3/7/21, 365 regular contexts after sign
// folding (index 0 is the zero-gradient context handled by run mode), plus
// contexts 365/366 for run-interruption samples.
constexpr int kRange = 256;
constexpr int kT1 = 3, kT2 = 7, kT3 = 21;
constexpr int kReset = 64;
constexpr int kMaxC = 127, kMinC = -128;
constexpr int kContexts = 367;

// Run-length code block sizes.
constexpr std::array<int, 32> kJ = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2,  2,  2,  3,  3,  3,  3,
                                    4, 4, 5, 5, 6, 6, 7, 7, 8, 9, 10, 11, 12, 13, 14, 15};

class BitWriter {
public:
    void put(int bit) {
        acc_ = (acc_ << 1) | (bit & 1);
        if (++fill_ == 8) {
            bytes_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ = 0;
            fill_ = 0;
        }
    }
    void put_bits(std::uint32_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put(static_cast<int>((value >> i) & 1));
    }
    std::vector<std::uint8_t> finish() {
        if (fill_ > 0) {
            acc_ <<= (8 - fill_);
            bytes_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ = 0;
            fill_ = 0;
        }
        return std::move(bytes_);
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint32_t acc_ = 0;
    int fill_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    int get() {
        if (pos_ >= bytes_.size() * 8) throw CorruptStream("bitstream exhausted");
        const std::uint8_t byte = bytes_[pos_ >> 3];
        const int bit = (byte >> (7 - (pos_ & 7))) & 1;
        ++pos_;
        return bit;
    }
    std::uint32_t get_bits(int count) {
        std::uint32_t v = 0;
        for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(get());
        return v;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

struct ContextState {
    std::array<int, kContexts> A{};
    std::array<int, kContexts> B{};
    std::array<int, kContexts> C{};
    std::array<int, kContexts> N{};
    std::array<int, 2> Nn{};  // negative-error counters for contexts 365/366

    ContextState() {
        const int a0 = std::max(2, (kRange + 32) / 64);
        A.fill(a0);
        N.fill(1);
    }

    int golomb_k(int q) const {
        int k = 0;
        while ((N[q] << k) < A[q]) ++k;
        return k;
    }

    void update_regular(int q, int err) {
        B[q] += err;
        A[q] += std::abs(err);
        if (N[q] == kReset) {
            A[q] >>= 1;
            B[q] = B[q] >= 0 ? B[q] >> 1 : -((1 - B[q]) >> 1);
            N[q] >>= 1;
        }
        ++N[q];
        if (B[q] <= -N[q]) {
            if (C[q] > kMinC) --C[q];
            B[q] += N[q];
            if (B[q] <= -N[q]) B[q] = -N[q] + 1;
        } else if (B[q] > 0) {
            if (C[q] < kMaxC) ++C[q];
            B[q] -= N[q];
            if (B[q] > 0) B[q] = 0;
        }
    }
};

int quantize_gradient(int g) {
    if (g <= -kT3) return -4;
    if (g <= -kT2) return -3;
    if (g <= -kT1) return -2;
    if (g < 0) return -1;
    if (g == 0) return 0;
    if (g < kT1) return 1;
    if (g < kT2) return 2;
    if (g < kT3) return 3;
    return 4;
}

// Folded context index in [0, 364] and the fold sign.
int fold_context(int q1, int q2, int q3, int& sign) {
    int q = q1 * 81 + q2 * 9 + q3;
    if (q < 0) {
        sign = -1;
        return -q;
    }
    sign = 1;
    return q;
}

int modulo_reduce(int err) {
    err %= kRange;
    if (err < -kRange / 2) err += kRange;
    if (err >= kRange / 2) err -= kRange;
    return err;
}

void golomb_encode(BitWriter& bw, int value, int k) {
    const int q = value >> k;
    for (int i = 0; i < q; ++i) bw.put(1);
    bw.put(0);
    bw.put_bits(static_cast<std::uint32_t>(value & ((1 << k) - 1)), k);
}

int golomb_decode(BitReader& br, int k) {
    int q = 0;
    while (br.get() == 1) {
        if (++q > 2 * kRange) throw CorruptStream("unary run too long");
    }
    return (q << k) | static_cast<int>(br.get_bits(k));
}

// Neighbor samples around position (x, y); out-of-image values follow the
// first-line / first-column replication conventions of the LOCO-I family.
struct Neighbors {
    int a, b, c, d;
};

Neighbors neighbors(const std::uint8_t* samples, int w, int x, int y) {
    const auto at = [&](int xx, int yy) {
        return static_cast<int>(samples[static_cast<std::size_t>(yy) * w + xx]);
    };
    Neighbors n{};
    n.b = y > 0 ? at(x, y - 1) : 0;
    n.d = y > 0 ? (x + 1 < w ? at(x + 1, y - 1) : n.b) : 0;
    n.a = x > 0 ? at(x - 1, y) : (y > 0 ? n.b : 0);
    if (x > 0) {
        n.c = y > 0 ? at(x - 1, y - 1) : 0;
    } else {
        n.c = y > 1 ? at(0, y - 2) : 0;  // b of the previous line's first sample
    }
    return n;
}

struct RunInterruption {
    int q;        // 365 or 366
    int ri_type;  // 1 when a == b
};

int interruption_k(const ContextState& ctx, const RunInterruption& ri) {
    const int temp = ri.ri_type ? ctx.A[366] + (ctx.N[366] >> 1) : ctx.A[365];
    int k = 0;
    while ((ctx.N[ri.q] << k) < temp) ++k;
    return k;
}

void update_interruption(ContextState& ctx, const RunInterruption& ri, int err, int em) {
    if (err < 0) ++ctx.Nn[ri.q - 365];
    ctx.A[ri.q] += (em + 1 - ri.ri_type) >> 1;
    if (ctx.N[ri.q] == kReset) {
        ctx.A[ri.q] >>= 1;
        ctx.N[ri.q] >>= 1;
        ctx.Nn[ri.q - 365] >>= 1;
    }
    ++ctx.N[ri.q];
}

}  // namespace

int med_predict(int a, int b, int c) {
    if (c >= std::max(a, b)) return std::min(a, b);
    if (c <= std::min(a, b)) return std::max(a, b);
    return a + b - c;
}

std::vector<std::uint8_t> encode_plane(const CodecPlane& plane) {
    if (plane.width < 1 || plane.height < 1 ||
        plane.samples.size() != static_cast<std::size_t>(plane.width) * plane.height) {
        throw SizeMismatch("encode_plane: malformed plane");
    }
    const int w = plane.width, h = plane.height;
    const std::uint8_t* px = plane.samples.data();
    ContextState ctx;
    int run_index = 0;
    BitWriter bw;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w;) {
            const Neighbors n = neighbors(px, w, x, y);
            const int g1 = n.d - n.b, g2 = n.b - n.c, g3 = n.c - n.a;

            if (g1 == 0 && g2 == 0 && g3 == 0) {
                // Run mode: count matches against a, then block-code the length.
                const int run_val = n.a;
                int run = 0;
                while (x + run < w &&
                       px[static_cast<std::size_t>(y) * w + x + run] == run_val) {
                    ++run;
                }
                const bool hit_eol = x + run == w;
                int rem = run;
                while (rem >= (1 << kJ[run_index])) {
                    bw.put(1);
                    rem -= 1 << kJ[run_index];
                    if (run_index < 31) ++run_index;
                }
                if (hit_eol) {
                    if (rem > 0) bw.put(1);
                    x += run;
                    continue;
                }
                bw.put(0);
                bw.put_bits(static_cast<std::uint32_t>(rem), kJ[run_index]);
                if (run_index > 0) --run_index;
                x += run;

                // Interruption sample.
                const int cur = px[static_cast<std::size_t>(y) * w + x];
                const Neighbors ni = neighbors(px, w, x, y);
                RunInterruption ri{};
                ri.ri_type = ni.a == ni.b ? 1 : 0;
                ri.q = 365 + ri.ri_type;
                const int pred = ri.ri_type ? ni.a : ni.b;
                int err = cur - pred;
                if (ri.ri_type == 0 && ni.a > ni.b) err = -err;
                err = modulo_reduce(err);
                const int k = interruption_k(ctx, ri);
                int map;
                if (k == 0 && err > 0 && 2 * ctx.Nn[ri.q - 365] < ctx.N[ri.q]) {
                    map = 1;
                } else if (err < 0 && 2 * ctx.Nn[ri.q - 365] >= ctx.N[ri.q]) {
                    map = 1;
                } else if (err < 0 && k != 0) {
                    map = 1;
                } else {
                    map = 0;
                }
                const int em = 2 * std::abs(err) - ri.ri_type - map;
                golomb_encode(bw, em, k);
                update_interruption(ctx, ri, err, em);
                ++x;
                continue;
            }

            // Regular mode.
            int sign;
            const int q = fold_context(quantize_gradient(g1), quantize_gradient(g2),
                                       quantize_gradient(g3), sign);
            int pred = med_predict(n.a, n.b, n.c) + sign * ctx.C[q];
            pred = std::clamp(pred, 0, kRange - 1);
            const int cur = px[static_cast<std::size_t>(y) * w + x];
            int err = cur - pred;
            if (sign < 0) err = -err;
            err = modulo_reduce(err);
            const int k = ctx.golomb_k(q);
            const int mapped = err >= 0 ? 2 * err : -2 * err - 1;
            golomb_encode(bw, mapped, k);
            ctx.update_regular(q, err);
            ++x;
        }
    }
    return bw.finish();
}

CodecPlane decode_plane(std::span<const std::uint8_t> stream, int width, int height) {
    if (width < 1 || height < 1) throw SizeMismatch("decode_plane: bad dimensions");
    CodecPlane plane(width, height);
    std::uint8_t* px = plane.samples.data();
    ContextState ctx;
    int run_index = 0;
    BitReader br(stream);

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width;) {
            const Neighbors n = neighbors(px, width, x, y);
            const int g1 = n.d - n.b, g2 = n.b - n.c, g3 = n.c - n.a;

            if (g1 == 0 && g2 == 0 && g3 == 0) {
                const int run_val = n.a;
                bool interrupted = false;
                while (x < width) {
                    const int bit = br.get();
                    if (bit == 1) {
                        const int block = 1 << kJ[run_index];
                        const int take = std::min(block, width - x);
                        for (int i = 0; i < take; ++i) {
                            px[static_cast<std::size_t>(y) * width + x + i] =
                                static_cast<std::uint8_t>(run_val);
                        }
                        x += take;
                        if (take == block && run_index < 31) ++run_index;
                    } else {
                        const int rem = static_cast<int>(br.get_bits(kJ[run_index]));
                        if (x + rem >= width) throw CorruptStream("run remainder past line end");
                        for (int i = 0; i < rem; ++i) {
                            px[static_cast<std::size_t>(y) * width + x + i] =
                                static_cast<std::uint8_t>(run_val);
                        }
                        x += rem;
                        if (run_index > 0) --run_index;
                        interrupted = true;
                        break;
                    }
                }
                if (!interrupted) continue;  // run filled to end of line

                const Neighbors ni = neighbors(px, width, x, y);
                RunInterruption ri{};
                ri.ri_type = ni.a == ni.b ? 1 : 0;
                ri.q = 365 + ri.ri_type;
                const int pred = ri.ri_type ? ni.a : ni.b;
                const int k = interruption_k(ctx, ri);
                const int em = golomb_decode(br, k);
                const int map = (em + ri.ri_type) & 1;
                const int mag = (em + ri.ri_type + map) / 2;
                int err;
                if (map == 1) {
                    err = (k == 0 && 2 * ctx.Nn[ri.q - 365] < ctx.N[ri.q]) ? mag : -mag;
                } else {
                    err = (k == 0 && 2 * ctx.Nn[ri.q - 365] < ctx.N[ri.q]) ? -mag : mag;
                }
                int value = ri.ri_type == 0 && ni.a > ni.b ? pred - err : pred + err;
                value &= kRange - 1;
                px[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(value);
                update_interruption(ctx, ri, err, em);
                ++x;
                continue;
            }

            int sign;
            const int q = fold_context(quantize_gradient(g1), quantize_gradient(g2),
                                       quantize_gradient(g3), sign);
            int pred = med_predict(n.a, n.b, n.c) + sign * ctx.C[q];
            pred = std::clamp(pred, 0, kRange - 1);
            const int k = ctx.golomb_k(q);
            const int mapped = golomb_decode(br, k);
            if (mapped >= 2 * kRange) throw CorruptStream("mapped error out of range");
            // err is the encoder's sign-adjusted, modulo-reduced residual.
            const int err = (mapped & 1) ? -((mapped + 1) / 2) : mapped / 2;
            int value = sign < 0 ? pred - err : pred + err;
            value &= kRange - 1;
            px[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(value);
            ctx.update_regular(q, err);
            ++x;
        }
    }
    return plane;
}

CodecPlane extract_plane(const RgbImage& image, int channel) {
    CodecPlane plane(image.width, image.height);
    const std::size_t n = image.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        plane.samples[i] = image.data[i * 3 + channel];
    }
    return plane;
}

double bitrate(const RgbImage& image) {
    if (image.width < 1 || image.height < 1) throw SizeMismatch("bitrate: empty image");
    std::size_t bits = 0;
    for (int c = 0; c < 3; ++c) {
        bits += encode_plane(extract_plane(image, c)).size() * 8;
    }
    return static_cast<double>(bits) / static_cast<double>(image.pixel_count());
}

namespace {

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint32_t get_u32le(std::span<const std::uint8_t> in, std::size_t pos) {
    return static_cast<std::uint32_t>(in[pos]) | (static_cast<std::uint32_t>(in[pos + 1]) << 8) |
           (static_cast<std::uint32_t>(in[pos + 2]) << 16) |
           (static_cast<std::uint32_t>(in[pos + 3]) << 24);
}

constexpr std::array<std::uint8_t, 4> kMagic = {'B', 'P', 'L', 'C'};

}  // namespace

std::vector<std::uint8_t> encode_image(const RgbImage& image) {
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    put_u32le(out, static_cast<std::uint32_t>(image.width));
    put_u32le(out, static_cast<std::uint32_t>(image.height));
    put_u32le(out, 3);
    for (int c = 0; c < 3; ++c) {
        const auto stream = encode_plane(extract_plane(image, c));
        put_u32le(out, static_cast<std::uint32_t>(stream.size()));
        out.insert(out.end(), stream.begin(), stream.end());
    }
    return out;
}

RgbImage decode_image(std::span<const std::uint8_t> container) {
    if (container.size() < 16 || !std::equal(kMagic.begin(), kMagic.end(), container.begin())) {
        throw CorruptStream("container: bad magic or short header");
    }
    const auto width = get_u32le(container, 4);
    const auto height = get_u32le(container, 8);
    const auto planes = get_u32le(container, 12);
    if (planes != 3 || width < 1 || height < 1 || width > (1u << 20) || height > (1u << 20)) {
        throw CorruptStream("container: unsupported header");
    }
    RgbImage image(static_cast<int>(width), static_cast<int>(height));
    std::size_t pos = 16;
    for (int c = 0; c < 3; ++c) {
        if (pos + 4 > container.size()) throw CorruptStream("container: truncated plane header");
        const auto len = get_u32le(container, pos);
        pos += 4;
        if (pos + len > container.size()) throw CorruptStream("container: truncated plane data");
        const CodecPlane plane =
            decode_plane(container.subspan(pos, len), static_cast<int>(width),
                         static_cast<int>(height));
        pos += len;
        for (std::size_t i = 0; i < plane.samples.size(); ++i) {
            image.data[i * 3 + c] = plane.samples[i];
        }
    }
    return image;
}

}  // namespace bpbe
