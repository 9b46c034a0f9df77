#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over GF(p^2).

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "isoshare/bits.hpp"
#include "isoshare/error.hpp"
#include "isoshare/prime_field.hpp"

namespace isoshare {

class CurveSpec {
public:
    CurveSpec(Fp2 a, Fp2 b) : a_(a), b_(b), p_(a.modulus()) {
        if (b.modulus() != p_) fail(ErrorKind::invalid_argument, "curve coefficients from different fields");
        if (!is_prime(p_) || p_ % 4 != 3)
            fail(ErrorKind::invalid_argument, "p must be a prime with p = 3 mod 4, got " + std::to_string(p_));
        if (p_ >= (std::uint64_t{1} << 32)) fail(ErrorKind::invalid_argument, "p must be below 2^32");
        if (discriminant().is_zero()) fail(ErrorKind::singular_curve, "4a^3 + 27b^2 = 0");
        group_exponent_factors_ = factorize(p_ + 1);
    }

    /// Convenience constructor for coefficients in GF(p).
    CurveSpec(std::uint64_t p, std::int64_t a, std::int64_t b)
        : CurveSpec(Fp2::from_int(a, p), Fp2::from_int(b, p)) {}

    const Fp2& a() const { return a_; }
    const Fp2& b() const { return b_; }
    std::uint64_t p() const { return p_; }
    /// p + 1, the exponent of E(GF(p^2)) when E is supersingular.
    std::uint64_t group_exponent() const { return p_ + 1; }
    const std::vector<PrimePower>& group_exponent_factors() const { return group_exponent_factors_; }

    Fp2 discriminant() const {
        return Fp2::from_int(4, p_) * a_.square() * a_ + Fp2::from_int(27, p_) * b_.square();
    }

    Fp2 rhs(const Fp2& x) const { return x.square() * x + a_ * x + b_; }

    friend bool operator==(const CurveSpec& l, const CurveSpec& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

private:
    Fp2 a_, b_;
    std::uint64_t p_;
    std::vector<PrimePower> group_exponent_factors_;
};

struct CurvePoint {
    bool infinity = true;
    Fp2 x, y;

    static CurvePoint identity() { return {}; }
    static CurvePoint affine(Fp2 x, Fp2 y) { return {false, x, y}; }

    bool is_identity() const { return infinity; }

    friend bool operator==(const CurvePoint& l, const CurvePoint& r) {
        if (l.infinity || r.infinity) return l.infinity == r.infinity;
        return l.x == r.x && l.y == r.y;
    }

    std::string to_string() const {
        return infinity ? std::string("infinity") : "(" + x.to_string() + ", " + y.to_string() + ")";
    }
};

inline bool on_curve(const CurveSpec& E, const CurvePoint& P) {
    return P.infinity || P.y.square() == E.rhs(P.x);
}

inline void require_on_curve(const CurveSpec& E, const CurvePoint& P) {
    if (!on_curve(E, P)) fail(ErrorKind::not_on_curve, "point " + P.to_string() + " is not on the curve");
}

inline CurvePoint point_negate(const CurvePoint& P) {
    return P.infinity ? P : CurvePoint::affine(P.x, -P.y);
}

namespace detail {

inline CurvePoint add_unchecked(const CurveSpec& E, const CurvePoint& P, const CurvePoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Fp2 slope;
    if (P.x == Q.x) {
        if (!(P.y == Q.y) || P.y.is_zero()) return CurvePoint::identity();
        slope = (Fp2::from_int(3, E.p()) * P.x.square() + E.a()) / (P.y + P.y);
    } else {
        slope = (Q.y - P.y) / (Q.x - P.x);
    }
    Fp2 x3 = slope.square() - P.x - Q.x;
    Fp2 y3 = slope * (P.x - x3) - P.y;
    return CurvePoint::affine(x3, y3);
}

inline CurvePoint mul_unchecked(const CurveSpec& E, std::uint64_t k, CurvePoint P) {
    CurvePoint acc = CurvePoint::identity();
    while (k) {
        if (k & 1) acc = add_unchecked(E, acc, P);
        P = add_unchecked(E, P, P);
        k >>= 1;
    }
    return acc;
}

} // namespace detail

inline CurvePoint point_add(const CurveSpec& E, const CurvePoint& P, const CurvePoint& Q) {
    require_on_curve(E, P);
    require_on_curve(E, Q);
    return detail::add_unchecked(E, P, Q);
}

/// Double-and-add.
inline CurvePoint scalar_mul(const CurveSpec& E, std::uint64_t k, const CurvePoint& P) {
    require_on_curve(E, P);
    return detail::mul_unchecked(E, k, P);
}

/// Exact order of P, found by stripping prime factors from p + 1.
/// Requires (p + 1) P = O, which holds on supersingular curves.
inline std::uint64_t point_order(const CurveSpec& E, const CurvePoint& P) {
    require_on_curve(E, P);
    std::uint64_t m = E.group_exponent();
    if (!detail::mul_unchecked(E, m, P).infinity)
        fail(ErrorKind::invalid_argument, "(p+1)P != O; curve is not supersingular");
    for (const auto& [q, e] : E.group_exponent_factors()) {
        for (unsigned i = 0; i < e; ++i) {
            if (detail::mul_unchecked(E, m / q, P).infinity) m /= q;
            else break;
        }
    }
    return m;
}

inline Fp2 random_fp2(std::mt19937_64& rng, std::uint64_t p) {
    std::uint64_t c0 = rng() % p;
    std::uint64_t c1 = rng() % p;
    return Fp2(c0, c1, p);
}

/// Uniform-ish affine point: random x until x^3 + ax + b is a square, random sign.
inline CurvePoint random_point(const CurveSpec& E, std::mt19937_64& rng) {
    for (;;) {
        Fp2 x = random_fp2(rng, E.p());
        auto y = fp2_sqrt(E.rhs(x));
        if (!y) continue;
        bool flip = (rng() & 1) != 0;
        return CurvePoint::affine(x, flip ? -*y : *y);
    }
}

/// A point of exact order N, deterministic in `seed`. Requires N | p + 1.
inline CurvePoint random_point_of_order(const CurveSpec& E, std::uint64_t N, std::uint64_t seed) {
    if (N == 0 || E.group_exponent() % N != 0)
        fail(ErrorKind::no_such_order,
             std::to_string(N) + " does not divide p+1 = " + std::to_string(E.group_exponent()));
    if (N == 1) return CurvePoint::identity();
    std::mt19937_64 rng(seed);
    const std::uint64_t cofactor = E.group_exponent() / N;
    for (;;) {
        auto Q = detail::mul_unchecked(E, cofactor, random_point(E, rng));
        if (!Q.infinity && point_order(E, Q) == N) return Q;
    }
}

/// j = 1728 * 4a^3 / (4a^3 + 27b^2).
inline Fp2 j_invariant(const CurveSpec& E) {
    const auto p = E.p();
    Fp2 four_a3 = Fp2::from_int(4, p) * E.a().square() * E.a();
    Fp2 denom = four_a3 + Fp2::from_int(27, p) * E.b().square();
    if (denom.is_zero()) fail(ErrorKind::singular_curve, "zero discriminant");
    return Fp2::from_int(1728, p) * four_a3 / denom;
}

/// Exact point count, O(p^2) square tests. Used as an oracle at small p.
inline std::uint64_t count_points(const CurveSpec& E) {
    const auto p = E.p();
    std::uint64_t count = 1;
    for (std::uint64_t c0 = 0; c0 < p; ++c0) {
        for (std::uint64_t c1 = 0; c1 < p; ++c1) {
            Fp2 v = E.rhs(Fp2(c0, c1, p));
            if (v.is_zero()) count += 1;
            else if (v.norm().is_square()) count += 2;
        }
    }
    return count;
}

/// True iff #E(GF(p^2)) = (p + 1)^2. Exact below p = 1000, otherwise the
/// Monte-Carlo test (p + 1) P = O on `trials` random points.
inline bool is_supersingular(const CurveSpec& E, unsigned trials = 40, std::uint64_t seed = 0x5eed) {
    const auto p = E.p();
    if (p <= 1000) return count_points(E) == (p + 1) * (p + 1);
    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < trials; ++i)
        if (!detail::mul_unchecked(E, E.group_exponent(), random_point(E, rng)).infinity) return false;
    return true;
}

/// Canonical layout: flag bit (1 = affine), then x, then y; infinity pads with zeros.
inline void serialize(Bits& out, const CurvePoint& P, std::uint64_t p) {
    out.push_back(P.infinity ? 0 : 1);
    if (P.infinity) {
        out.insert(out.end(), 4 * field_bit_width(p), 0);
        return;
    }
    serialize(out, P.x);
    serialize(out, P.y);
}

/// Lexicographic key matching the canonical (x, y) serialization order.
inline auto canonical_key(const CurvePoint& P) {
    return std::tuple(P.infinity ? 0 : 1, P.x.c0().value(), P.x.c1().value(), P.y.c0().value(), P.y.c1().value());
}

} // namespace isoshare
