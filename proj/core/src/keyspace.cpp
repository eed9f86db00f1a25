#include "bpbe/keyspace.hpp"

#include <cmath>
#include <sstream>

#include "bpbe/errors.hpp"

namespace bpbe {
namespace {

BigInt factorial(std::uint32_t n) {
    BigInt f = 1;
    for (std::uint32_t k = 2; k <= n; ++k) f *= k;
    return f;
}

BigInt ipow(std::uint32_t base, std::uint32_t exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

KeySpaceReport finalize(std::uint32_t L, BigInt n_p, BigInt n_d, BigInt n_n, BigInt n_c) {
    KeySpaceReport r;
    r.L = L;
    r.n_p = std::move(n_p);
    r.n_d = std::move(n_d);
    r.n_n = std::move(n_n);
    r.n_c = std::move(n_c);
    r.n_a = r.n_p * r.n_d * r.n_n * r.n_c;
    r.log2_n_a = log2_exact(r.n_a);
    return r;
}

}  // namespace

double log2_exact(const BigInt& n) {
    if (n <= 0) throw CountMismatch("log2_exact: argument must be positive");
    const auto bits = static_cast<long>(boost::multiprecision::msb(n));  // floor(log2 n)
    if (bits <= 62) {
        return std::log2(n.convert_to<double>());
    }
    // Top 63 bits give a mantissa in [2^62, 2^63); the shift adds back exactly.
    const BigInt top = n >> (bits - 62);
    return static_cast<double>(bits - 62) + std::log2(top.convert_to<double>());
}

KeySpaceReport keyspace_proposed(std::uint32_t L) {
    if (L < 1) throw CountMismatch("keyspace: L must be at least 1");
    const BigInt f = factorial(L);
    return finalize(L, f * f * f, ipow(512, L), ipow(8, L), ipow(6, L));
}

KeySpaceReport keyspace_conventional(std::uint32_t L) {
    if (L < 1) throw CountMismatch("keyspace: L must be at least 1");
    return finalize(L, factorial(L), ipow(8, L), ipow(2, L), ipow(6, L));
}

std::string KeySpaceReport::serialize() const {
    std::ostringstream out;
    out << "L=" << L << "\n"
        << "n_p=" << n_p << "\n"
        << "n_d=" << n_d << "\n"
        << "n_n=" << n_n << "\n"
        << "n_c=" << n_c << "\n"
        << "n_a=" << n_a << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", log2_n_a);
    out << "log2_n_a=" << buf << "\n";
    return out.str();
}

}  // namespace bpbe
