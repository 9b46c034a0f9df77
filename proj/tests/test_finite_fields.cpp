#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>

#include "isoshare/binary_field.hpp"
#include "isoshare/bits.hpp"
#include "isoshare/prime_field.hpp"
#include "oracles.hpp"

using namespace isoshare;

namespace {

constexpr std::uint64_t p431 = 431;

Fp2 random_fp2_of(std::mt19937_64& rng, std::uint64_t p) { return Fp2(rng() % p, rng() % p, p); }

} // namespace

TEST(PrimeField, IMultipliedByIIsMinusOne) {
    auto i = Fp2::i(p431);
    EXPECT_EQ(i * i, Fp2(430, 0, p431));
}

TEST(PrimeField, InverseOfZeroThrows) {
    try {
        (void)Fp2::zero(p431).inverse();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::division_by_zero);
    }
    EXPECT_THROW((void)Fp(0, p431).inverse(), Error);
}

TEST(PrimeField, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 2000; ++trial) {
        auto a = random_fp2_of(rng, p431), b = random_fp2_of(rng, p431), c = random_fp2_of(rng, p431);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Fp2::zero(p431));
        if (!a.is_zero()) { EXPECT_TRUE((a * a.inverse()).is_one()); }
        EXPECT_EQ(a.pow(p431 * p431 - 1), a.is_zero() ? Fp2::zero(p431) : Fp2::one(p431));
    }
}

TEST(PrimeField, SerializationIsBigEndianFixedWidth) {
    Bits out;
    serialize(out, Fp2(5, 430, p431));
    ASSERT_EQ(out.size(), 18u);
    EXPECT_EQ(read_bits(out, 0, 9), 5u);
    EXPECT_EQ(read_bits(out, 9, 9), 430u);
    EXPECT_EQ(deserialize_fp2(out, 0, p431), Fp2(5, 430, p431));
    Bits bad;
    append_bits(bad, 431, 9);
    append_bits(bad, 0, 9);
    EXPECT_THROW((void)deserialize_fp2(bad, 0, p431), Error);
}

TEST(Fp2Sqrt, ZeroIsItsOwnRoot) { EXPECT_EQ(fp2_sqrt(Fp2::zero(p431)), Fp2::zero(p431)); }

TEST(Fp2Sqrt, ExhaustiveAgainstSquareTable) {
    const auto table = oracle::fp2_square_table(p431);
    std::size_t squares = 0;
    for (std::uint64_t c0 = 0; c0 < p431; ++c0) {
        for (std::uint64_t c1 = 0; c1 < p431; ++c1) {
            Fp2 a(c0, c1, p431);
            auto root = fp2_sqrt(a);
            const bool expected = table[c0 * p431 + c1];
            ASSERT_EQ(root.has_value(), expected) << a;
            if (!root) continue;
            ++squares;
            ASSERT_EQ(root->square(), a);
            // Canonical: (c1, c0) of the returned root is not larger than that of -root.
            auto other = -*root;
            ASSERT_LE(std::pair(root->c1().value(), root->c0().value()),
                      std::pair(other.c1().value(), other.c0().value()));
        }
    }
    EXPECT_EQ(squares, (p431 * p431 + 1) / 2);
}

TEST(Fp2Sqrt, RandomSquaresAtLargerPrime) {
    const std::uint64_t p = 1000003;   // prime, = 3 mod 4
    ASSERT_EQ(p % 4, 3u);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
        auto s = random_fp2_of(rng, p);
        auto root = fp2_sqrt(s.square());
        ASSERT_TRUE(root);
        EXPECT_EQ(root->square(), s.square());
        EXPECT_TRUE(*root == s || *root == -s);
    }
}

TEST(Fp2CubeRoots, EveryRootCubes) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto c = random_fp2_of(rng, p431);
        if (c.is_zero()) continue;
        for (const auto& r : fp2_cube_roots(c)) EXPECT_EQ(r.square() * r, c);
        // A cube always has exactly three roots since 3 | p^2 - 1.
        EXPECT_EQ(fp2_cube_roots(c.square() * c).size(), 3u);
    }
}

TEST(BinaryField, TauCubedInGf8) {
    BinaryField f(3);
    EXPECT_EQ(f.modulus(), 0xbu);   // x^3 + x + 1
    EXPECT_EQ(f.pow(f.tau(), 3), f.add(f.tau(), f.one()));
}

namespace {

bool x_is_primitive(std::uint64_t mod, unsigned r) {
    const std::uint64_t order = (std::uint64_t{1} << r) - 1;
    std::uint64_t acc = 1;
    for (std::uint64_t j = 1; j <= order; ++j) {
        acc = oracle::gf2_mulmod(acc, r == 1 ? 1 : 2, mod);
        if (acc == 1) return j == order;
    }
    return false;
}

} // namespace

TEST(BinaryField, TableEntriesArePrimitive) {
    for (unsigned r = 1; r <= 20; ++r) {
        const auto mod = primitive_polynomials[r - 1];
        ASSERT_EQ(static_cast<unsigned>(std::bit_width(mod)), r + 1);
        EXPECT_TRUE(x_is_primitive(mod, r)) << "r=" << r;
    }
}

TEST(BinaryField, TableEntriesHaveSmallestWeightThenValue) {
    for (unsigned r = 2; r <= 10; ++r) {
        const auto mod = primitive_polynomials[r - 1];
        const auto w = std::popcount(mod);
        for (std::uint64_t cand = (std::uint64_t{1} << r) | 1; cand < (std::uint64_t{1} << (r + 1)); cand += 2) {
            const auto cw = std::popcount(cand);
            if (cw < w || (cw == w && cand < mod)) { EXPECT_FALSE(x_is_primitive(cand, r)) << "r=" << r << " " << cand; }
        }
    }
}

TEST(BinaryField, TauOrderExhaustive) {
    for (unsigned r = 1; r <= 8; ++r) {
        BinaryField f(r);
        auto acc = f.one();
        for (std::uint64_t j = 1; j < f.multiplicative_order(); ++j) {
            acc = f.mul(acc, f.tau());
            ASSERT_NE(acc, f.one());
        }
        EXPECT_EQ(f.mul(acc, f.tau()), f.one());
        EXPECT_EQ(f.tau_pow(static_cast<std::int64_t>(f.multiplicative_order())), f.one());
    }
}

TEST(BinaryField, MultiplicationMatchesCarrylessOracle) {
    std::mt19937_64 rng(3);
    for (unsigned r : {1u, 3u, 4u, 8u, 13u, 16u, 24u, 31u}) {
        BinaryField f(r);
        for (int i = 0; i < 500; ++i) {
            auto a = f.element(rng() % f.size()), b = f.element(rng() % f.size()), c = f.element(rng() % f.size());
            ASSERT_EQ(f.mul(a, b).bits, oracle::gf2_mulmod(a.bits, b.bits, f.modulus()));
            ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if (!f.is_zero(a)) { ASSERT_EQ(f.mul(a, f.inv(a)), f.one()); }
        }
    }
    EXPECT_THROW((void)BinaryField(4).inv(BinaryFieldElement{0}), Error);
}

TEST(BinaryField, PhiBasisConvention) {
    BinaryField f(4);
    EXPECT_EQ(f.phi_expand(f.zero()), Bits(4, 0));
    EXPECT_EQ(f.phi_expand(f.one()), (Bits{1, 0, 0, 0}));
    EXPECT_EQ(f.phi_expand(f.tau()), (Bits{0, 1, 0, 0}));
}

TEST(BinaryField, PhiIsABijection) {
    for (unsigned r = 1; r <= 8; ++r) {
        BinaryField f(r);
        std::set<Bits> images;
        for (std::uint64_t v = 0; v < f.size(); ++v) {
            auto e = f.element(v);
            auto bits = f.phi_expand(e);
            ASSERT_EQ(bits.size(), r);
            ASSERT_EQ(f.phi_collapse(bits), e);
            images.insert(bits);
        }
        EXPECT_EQ(images.size(), f.size());
    }
}

TEST(BinaryField, PhiCollapseOfTauFifth) {
    BinaryField f(4);
    auto t5 = f.one();
    for (int i = 0; i < 5; ++i) t5 = f.mul(t5, f.tau());
    // x^5 = x^2 + x mod x^4 + x + 1.
    EXPECT_EQ(t5.bits, 0b0110u);
    EXPECT_EQ(f.phi_collapse(f.phi_expand(t5)), t5);
    EXPECT_EQ(f.tau_pow(5), t5);
}

TEST(BinaryField, PhiCollapseRejectsWrongLength) {
    BinaryField f(4);
    try {
        (void)f.phi_collapse(Bits(5, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::length_mismatch);
    }
    EXPECT_EQ(f.phi_collapse(Bits(4, 0)), f.zero());
}

TEST(Bits, HexRoundTripAndFill) {
    Bits b{1, 0, 1, 1, 0, 1};
    EXPECT_EQ(to_hex(b), "b4");
    EXPECT_EQ(from_hex("b4", 6), b);
    EXPECT_THROW((void)from_hex("b5", 6), Error);   // nonzero fill
    EXPECT_THROW((void)from_hex("b", 6), Error);
    EXPECT_THROW((void)from_hex("bz", 6), Error);
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n < 70; ++n) {
        Bits v(n);
        for (auto& x : v) x = rng() & 1;
        ASSERT_EQ(from_hex(to_hex(v), n), v);
        ASSERT_EQ(to_hex(v).size(), (n + 3) / 4);
        ASSERT_EQ(unpack_bytes(pack_bytes(v), n), v);
    }
}
