#pragma once

// GF(2) and GF(2^r) in polynomial basis. Elements of GF(2^r) are bit masks,
// bit j holding the coefficient of x^j. The modulus for each r is the
// primitive polynomial of smallest weight, ties broken by smallest integer
// value, so tau = x is a primitive element.

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "isoshare/bits.hpp"
#include "isoshare/error.hpp"

namespace isoshare {

inline constexpr unsigned max_binary_field_degree = 31;

/// Index r-1 holds the modulus of GF(2^r), including the x^r term.
inline constexpr std::array<std::uint64_t, max_binary_field_degree> primitive_polynomials = {
    0x3,       0x7,       0xb,        0x13,       0x25,       0x43,       0x83,       0x11d,
    0x211,     0x409,     0x805,      0x1053,     0x201b,     0x402b,     0x8003,     0x1002d,
    0x20009,   0x40081,   0x80027,    0x100009,   0x200005,   0x400003,   0x800021,   0x100001b,
    0x2000009, 0x4000047, 0x8000027,  0x10000009, 0x20000005, 0x40000053, 0x80000009,
};

/// The prime field GF(2) as a field descriptor for the code templates.
struct Gf2 {
    using Element = std::uint8_t;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element add(Element a, Element b) const { return a ^ b; }
    Element sub(Element a, Element b) const { return a ^ b; }
    Element neg(Element a) const { return a; }
    Element mul(Element a, Element b) const { return a & b; }
    Element inv(Element a) const {
        if (!a) fail(ErrorKind::division_by_zero, "inverse of zero in GF(2)");
        return 1;
    }
    std::uint64_t size() const { return 2; }
    Element element(std::uint64_t index) const { return static_cast<Element>(index & 1U); }
    std::uint64_t index(Element a) const { return a; }
    bool is_zero(Element a) const { return a == 0; }

    friend bool operator==(const Gf2&, const Gf2&) = default;
};

struct BinaryFieldElement {
    std::uint32_t bits = 0;
    friend bool operator==(BinaryFieldElement, BinaryFieldElement) = default;
    friend auto operator<=>(BinaryFieldElement, BinaryFieldElement) = default;
};

/// GF(2^r) field descriptor. Cheap to copy.
class BinaryField {
public:
    using Element = BinaryFieldElement;

    explicit BinaryField(unsigned r) : r_(r) {
        if (r < 1 || r > max_binary_field_degree)
            fail(ErrorKind::invalid_argument, "GF(2^r) needs 1 <= r <= 31, got r=" + std::to_string(r));
        modulus_ = primitive_polynomials[r - 1];
    }

    unsigned degree() const { return r_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t size() const { return std::uint64_t{1} << r_; }
    std::uint64_t multiplicative_order() const { return size() - 1; }

    Element zero() const { return {0}; }
    Element one() const { return {1}; }
    /// Primitive element tau = x (x = 1 when r = 1).
    Element tau() const { return r_ == 1 ? one() : Element{2}; }

    Element add(Element a, Element b) const { return {a.bits ^ b.bits}; }
    Element sub(Element a, Element b) const { return {a.bits ^ b.bits}; }
    Element neg(Element a) const { return a; }

    Element mul(Element a, Element b) const {
        std::uint64_t x = a.bits, y = b.bits, acc = 0;
        const std::uint64_t top = std::uint64_t{1} << r_;
        while (y) {
            if (y & 1) acc ^= x;
            y >>= 1;
            x <<= 1;
            if (x & top) x ^= modulus_;
        }
        return {static_cast<std::uint32_t>(acc)};
    }

    Element pow(Element a, std::uint64_t e) const {
        Element r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Element inv(Element a) const {
        if (a.bits == 0) fail(ErrorKind::division_by_zero, "inverse of zero in GF(2^r)");
        return pow(a, multiplicative_order() - 1);
    }

    Element tau_pow(std::int64_t j) const {
        auto ord = static_cast<std::int64_t>(multiplicative_order());
        auto e = j % ord;
        if (e < 0) e += ord;
        return pow(tau(), static_cast<std::uint64_t>(e));
    }

    Element element(std::uint64_t index) const { return {static_cast<std::uint32_t>(index)}; }
    std::uint64_t index(Element a) const { return a.bits; }
    bool is_zero(Element a) const { return a.bits == 0; }

    /// Phi: coefficient vector, x^0 first.
    Bits phi_expand(Element a) const {
        Bits out(r_);
        for (unsigned j = 0; j < r_; ++j) out[j] = (a.bits >> j) & 1U;
        return out;
    }

    Element phi_collapse(std::span<const std::uint8_t> bits) const {
        if (bits.size() != r_)
            fail(ErrorKind::length_mismatch,
                 "expected " + std::to_string(r_) + " bits, got " + std::to_string(bits.size()));
        std::uint32_t v = 0;
        for (unsigned j = 0; j < r_; ++j) v |= static_cast<std::uint32_t>(bits[j] & 1U) << j;
        return {v};
    }

    friend bool operator==(const BinaryField& a, const BinaryField& b) { return a.r_ == b.r_; }

private:
    unsigned r_;
    std::uint64_t modulus_;
};

} // namespace isoshare
