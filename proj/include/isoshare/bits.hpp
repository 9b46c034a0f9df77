#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isoshare/error.hpp"

namespace isoshare {

/// One bit per entry, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Appends the low `width` bits of `value`, most significant first.
inline void append_bits(Bits& out, std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

inline std::uint64_t read_bits(std::span<const std::uint8_t> bits, std::size_t offset, unsigned width) {
    if (offset + width > bits.size())
        fail(ErrorKind::length_mismatch, "bit read past end");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i)
        v = (v << 1) | (bits[offset + i] & 1U);
    return v;
}

/// MSB-first packing into bytes, zero fill in the final byte.
inline std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    return out;
}

inline Bits unpack_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8)
        fail(ErrorKind::length_mismatch, "not enough bytes for requested bit count");
    Bits out(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
    return out;
}

/// MSB-first hex with ceil(n/4) digits; the final nibble is zero filled.
inline std::string to_hex(std::span<const std::uint8_t> bits) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j)
            nibble = (nibble << 1) | (i + j < bits.size() ? (bits[i + j] & 1U) : 0U);
        out.push_back(digits[nibble]);
    }
    return out;
}

/// Inverse of to_hex. Rejects wrong digit counts and nonzero fill bits.
inline Bits from_hex(std::string_view hex, std::size_t nbits) {
    if (hex.size() != (nbits + 3) / 4)
        fail(ErrorKind::length_mismatch,
             "expected " + std::to_string((nbits + 3) / 4) + " hex digits, got " + std::to_string(hex.size()));
    Bits out;
    out.reserve(hex.size() * 4);
    for (char c : hex) {
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else fail(ErrorKind::parse_error, std::string("bad hex digit '") + c + "'");
        append_bits(out, v, 4);
    }
    for (std::size_t i = nbits; i < out.size(); ++i)
        if (out[i]) fail(ErrorKind::parse_error, "nonzero fill bits in hex payload");
    out.resize(nbits);
    return out;
}

} // namespace isoshare
