#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bpbe {

using BigInt = boost::multiprecision::cpp_int;

/// Exact per-process and total key-space counts for one scheme at block count L.
struct KeySpaceReport {
    std::uint32_t L = 0;
    BigInt n_p;  // positional scrambling
    BigInt n_d;  // rotation/flip
    BigInt n_n;  // negative-positive
    BigInt n_c;  // color shuffle
    BigInt n_a;  // product of the four
    double log2_n_a = 0.0;

    /// key=value lines, exact decimal integers, log2 at 6 decimal places.
    std::string serialize() const;
};

// Proposed: (L!)^3 * 512^L * 8^L * 6^L.  Conventional: L! * 8^L * 2^L * 6^L.
KeySpaceReport keyspace_proposed(std::uint32_t L);
KeySpaceReport keyspace_conventional(std::uint32_t L);

/// log2 of an exact positive integer, accurate to well under 1e-6 bits.
double log2_exact(const BigInt& n);

}  // namespace bpbe
