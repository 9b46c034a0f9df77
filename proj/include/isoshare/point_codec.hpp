#pragma once

// Compressed point encoding: [sign] || x.c0 || x.c1 || zero padding.
// The sign bit is 1 iff y is the canonical square root of x^3 + ax + b.

#include <cstddef>
#include <string>

#include "isoshare/bits.hpp"
#include "isoshare/curve.hpp"
#include "isoshare/error.hpp"
#include "isoshare/prime_field.hpp"

namespace isoshare {

struct PointBits {
    Bits bits;
    std::size_t length() const { return bits.size(); }
    friend bool operator==(const PointBits&, const PointBits&) = default;
};

/// Bits needed before padding: one sign bit plus x.
inline std::size_t min_point_bits(std::uint64_t p) { return 2 * std::size_t{field_bit_width(p)} + 1; }

inline PointBits encode_point(const CurveSpec& E, const CurvePoint& P, std::size_t length) {
    if (length < min_point_bits(E.p()))
        fail(ErrorKind::length_too_small, "point encoding needs at least " + std::to_string(min_point_bits(E.p())) +
                                              " bits, got " + std::to_string(length));
    if (P.infinity) fail(ErrorKind::identity_not_encodable, "the identity has no affine encoding");
    require_on_curve(E, P);
    auto canonical = fp2_sqrt(E.rhs(P.x));
    PointBits out;
    out.bits.reserve(length);
    out.bits.push_back(canonical && *canonical == P.y ? 1 : 0);
    serialize(out.bits, P.x);
    out.bits.resize(length, 0);
    return out;
}

inline CurvePoint decode_point(const CurveSpec& E, const PointBits& in) {
    const auto& bits = in.bits;
    const std::size_t used = min_point_bits(E.p());
    if (bits.size() < used) fail(ErrorKind::invalid_encoding, "encoding shorter than a compressed point");
    for (std::size_t i = used; i < bits.size(); ++i)
        if (bits[i]) fail(ErrorKind::invalid_encoding, "nonzero padding bit at " + std::to_string(i));
    Fp2 x = deserialize_fp2(bits, 1, E.p());
    auto root = fp2_sqrt(E.rhs(x));
    if (!root) fail(ErrorKind::invalid_encoding, "x^3 + ax + b is not a square");
    if (root->is_zero() && bits[0] == 0) fail(ErrorKind::invalid_encoding, "2-torsion point with clear sign bit");
    return CurvePoint::affine(x, bits[0] ? *root : -*root);
}

} // namespace isoshare
