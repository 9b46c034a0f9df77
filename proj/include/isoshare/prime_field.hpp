#pragma once

// Arithmetic in GF(p) and GF(p^2) = GF(p)(i), i^2 = -1.
//
// Desk-scale only: p < 2^32 so that every product of two reduced values fits
// in 64 bits. p must be prime with p = 3 (mod 4), which makes -1 a non-square
// and the tower well defined.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isoshare/bits.hpp"
#include "isoshare/error.hpp"

namespace isoshare {

// ---------------------------------------------------------------------------
// Integer helpers

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes ascending.
inline std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        unsigned e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

/// Width of the canonical serialization of GF(p) elements: ceil(log2 p).
constexpr unsigned field_bit_width(std::uint64_t p) {
    return static_cast<unsigned>(std::bit_width(p - 1));
}

// ---------------------------------------------------------------------------
// GF(p)

class Fp {
public:
    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

    static Fp from_signed(std::int64_t value, std::uint64_t p) {
        auto m = static_cast<std::int64_t>(p);
        auto r = value % m;
        if (r < 0) r += m;
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t s = a.v_ + b.v_;
        return raw(s >= a.p_ ? s - a.p_ : s, a.p_);
    }
    friend Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_); }
    friend Fp operator*(Fp a, Fp b) { return raw(a.v_ * b.v_ % a.p_, a.p_); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }

    Fp pow(std::uint64_t e) const {
        Fp base = *this, r = raw(1 % p_, p_);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    Fp inverse() const {
        if (v_ == 0) fail(ErrorKind::division_by_zero, "inverse of zero in GF(p)");
        return pow(p_ - 2);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

    /// Euler criterion; zero counts as a square.
    bool is_square() const { return v_ == 0 || pow((p_ - 1) / 2).v_ == 1; }

    friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_; }

private:
    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 2;
};

// ---------------------------------------------------------------------------
// GF(p^2)

class Fp2 {
public:
    Fp2() = default;
    Fp2(Fp c0, Fp c1) : c0_(c0), c1_(c1) {}
    Fp2(std::uint64_t c0, std::uint64_t c1, std::uint64_t p) : c0_(c0, p), c1_(c1, p) {}

    static Fp2 zero(std::uint64_t p) { return Fp2(0, 0, p); }
    static Fp2 one(std::uint64_t p) { return Fp2(1, 0, p); }
    static Fp2 i(std::uint64_t p) { return Fp2(0, 1, p); }
    static Fp2 from_int(std::int64_t v, std::uint64_t p) { return Fp2(Fp::from_signed(v, p), Fp(0, p)); }

    const Fp& c0() const noexcept { return c0_; }
    const Fp& c1() const noexcept { return c1_; }
    std::uint64_t modulus() const noexcept { return c0_.modulus(); }
    bool is_zero() const noexcept { return c0_.is_zero() && c1_.is_zero(); }
    bool is_one() const noexcept { return c0_.value() == 1 && c1_.is_zero(); }

    friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0_ + b.c0_, a.c1_ + b.c1_}; }
    friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0_ - b.c0_, a.c1_ - b.c1_}; }
    friend Fp2 operator*(const Fp2& a, const Fp2& b) {
        return {a.c0_ * b.c0_ - a.c1_ * b.c1_, a.c0_ * b.c1_ + a.c1_ * b.c0_};
    }
    Fp2 operator-() const { return {-c0_, -c1_}; }
    Fp2& operator+=(const Fp2& b) { return *this = *this + b; }
    Fp2& operator-=(const Fp2& b) { return *this = *this - b; }
    Fp2& operator*=(const Fp2& b) { return *this = *this * b; }

    Fp2 square() const { return *this * *this; }
    Fp2 conjugate() const { return {c0_, -c1_}; }
    Fp norm() const { return c0_ * c0_ + c1_ * c1_; }

    Fp2 pow(std::uint64_t e) const {
        Fp2 base = *this, r = one(modulus());
        while (e) {
            if (e & 1) r *= base;
            base = base.square();
            e >>= 1;
        }
        return r;
    }

    Fp2 inverse() const {
        if (is_zero()) fail(ErrorKind::division_by_zero, "inverse of zero in GF(p^2)");
        Fp n = norm().inverse();
        return {c0_ * n, -(c1_ * n)};
    }
    friend Fp2 operator/(const Fp2& a, const Fp2& b) { return a * b.inverse(); }

    friend bool operator==(const Fp2& a, const Fp2& b) noexcept { return a.c0_ == b.c0_ && a.c1_ == b.c1_; }

    /// Orders by (c0, c1) as integers, i.e. the order of the canonical bit layout.
    friend std::strong_ordering operator<=>(const Fp2& a, const Fp2& b) noexcept {
        if (auto c = a.c0_.value() <=> b.c0_.value(); c != 0) return c;
        return a.c1_.value() <=> b.c1_.value();
    }

    std::string to_string() const {
        return std::to_string(c0_.value()) + "+" + std::to_string(c1_.value()) + "*i";
    }

private:
    Fp c0_, c1_;
};

inline std::ostream& operator<<(std::ostream& os, const Fp2& a) { return os << a.to_string(); }

/// Square root in GF(p^2), p = 3 mod 4. Of the two roots s, -s the one with
/// the smaller (c1, c0) integer pair is returned. Non-squares give nullopt.
inline std::optional<Fp2> fp2_sqrt(const Fp2& a) {
    const std::uint64_t p = a.modulus();
    if (a.is_zero()) return a;
    // Adj / Rodriguez-Henriquez, algorithm for q = p^2 with p = 3 mod 4.
    Fp2 a1 = a.pow((p - 3) / 4);
    Fp2 alpha = a1 * (a1 * a);
    Fp2 x0 = a1 * a;
    Fp2 minus_one = -Fp2::one(p);
    Fp2 x;
    if (alpha == minus_one) {
        x = Fp2::i(p) * x0;
    } else {
        Fp2 b = (Fp2::one(p) + alpha).pow((p - 1) / 2);
        x = b * x0;
    }
    if (!(x.square() == a)) return std::nullopt;
    Fp2 y = -x;
    auto key = [](const Fp2& s) { return std::pair(s.c1().value(), s.c0().value()); };
    return key(y) < key(x) ? y : x;
}

inline bool fp2_is_square(const Fp2& a) {
    return a.is_zero() || a.norm().is_square();
}

/// All s with s^3 = c. Brute force over the 3-Sylow subgroup of GF(p^2)^*,
/// which is tiny at desk scale.
inline std::vector<Fp2> fp2_cube_roots(const Fp2& c) {
    const std::uint64_t p = c.modulus();
    if (c.is_zero()) return {c};
    const std::uint64_t q1 = p * p - 1;
    std::uint64_t sylow = 1, rest = q1;
    while (rest % 3 == 0) { rest /= 3; sylow *= 3; }
    std::vector<Fp2> roots;
    if (sylow == 1) {
        // Cubing is a bijection; invert 3 modulo the group order.
        std::uint64_t inv3 = 0;
        for (std::uint64_t k = 1; k < 3; ++k)
            if ((k * q1 + 1) % 3 == 0) inv3 = (k * q1 + 1) / 3;
        roots.push_back(c.pow(inv3));
        return roots;
    }
    // x0 = c^m with 3m = 1 mod rest; then x0^3 = c * (3-Sylow element).
    std::uint64_t m = 0;
    for (std::uint64_t k = 0; k < 3; ++k)
        if ((k * rest + 1) % 3 == 0) m = (k * rest + 1) / 3;
    Fp2 x0 = c.pow(m);
    // Generator of the 3-Sylow: z^rest for a non-cube z of full 3-power order.
    Fp2 gen;
    bool found = false;
    for (std::uint64_t c0 = 1; !found && c0 < p; ++c0) {
        for (std::uint64_t c1 = 0; !found && c1 < p; ++c1) {
            Fp2 z = Fp2(c0, c1, p).pow(rest);
            if (!(z.pow(sylow / 3).is_one())) { gen = z; found = true; }
        }
    }
    Fp2 g = Fp2::one(p);
    for (std::uint64_t k = 0; k < sylow; ++k, g *= gen) {
        Fp2 cand = x0 * g;
        if (cand.square() * cand == c) roots.push_back(cand);
    }
    return roots;
}

// ---------------------------------------------------------------------------
// Canonical serialization: fixed-width big-endian, c0 then c1.

inline void serialize(Bits& out, const Fp& a) { append_bits(out, a.value(), field_bit_width(a.modulus())); }

inline void serialize(Bits& out, const Fp2& a) {
    serialize(out, a.c0());
    serialize(out, a.c1());
}

/// Reads one GF(p^2) element; components >= p are rejected.
inline Fp2 deserialize_fp2(std::span<const std::uint8_t> bits, std::size_t offset, std::uint64_t p) {
    const unsigned w = field_bit_width(p);
    std::uint64_t c0 = read_bits(bits, offset, w);
    std::uint64_t c1 = read_bits(bits, offset + w, w);
    if (c0 >= p || c1 >= p) fail(ErrorKind::invalid_encoding, "field component out of range");
    return Fp2(c0, c1, p);
}

} // namespace isoshare
