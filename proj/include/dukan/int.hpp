#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dukan {

/// Exact arbitrary-precision integer. All arithmetic in the library goes
/// through this type; there are no floating-point or wrapping paths.
using Int = boost::multiprecision::cpp_int;

struct EntryLimitExceeded : std::runtime_error {
    explicit EntryLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfTruncation : std::runtime_error {
    explicit OutOfTruncation(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
// 0 means unlimited. Set from DUKAN_MAX_ENTRY_BITS by the CLI.
inline std::size_t g_max_entry_bits = 0;
}  // namespace detail

inline void set_max_entry_bits(std::size_t bits) { detail::g_max_entry_bits = bits; }
inline std::size_t max_entry_bits() { return detail::g_max_entry_bits; }

inline void check_entry_limit(const Int& v) {
    if (detail::g_max_entry_bits != 0 && msb(abs(v) + 1) >= detail::g_max_entry_bits)
        throw EntryLimitExceeded("integer entry exceeds " +
                                 std::to_string(detail::g_max_entry_bits) + " bits");
}

inline std::string to_string(const Int& v) { return v.str(); }

/// Parses a decimal integer with optional sign. Throws std::invalid_argument on
/// anything else (cpp_int itself accepts hex/octal prefixes, which we don't want
/// in the wire format).
inline Int parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bare sign is not an integer");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad integer literal: " + s);
    return Int(s);
}

/// Floor division (rounds toward -inf); b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncated
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Euclidean remainder: 0 <= result < |b|.
inline Int euclid_mod(const Int& a, const Int& b) {
    Int r = a % b;
    if (r < 0) r += abs(b);
    return r;
}

}  // namespace dukan
