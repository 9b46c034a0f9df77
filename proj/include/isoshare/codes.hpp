#pragma once

// Concrete code families used by the sharing scheme:
//  - RS(2^r, d): cyclic Reed-Solomon codes over GF(2^r) with generator
//    g(x) = (x + tau^(m+1)) ... (x + tau^(m+d-1)), length 2^r - 1,
//    dimension 2^r - d, systematic on the first k positions;
//  - hyperoval codes [2^r + 2, 3, 2^r] (triply extended RS);
//  - subfield subcodes C* = C intersected with GF(2)^l;
//  - the binary expansion C+ of an RS code, one parity bit per symbol;
//  - block codes: RS over GF(2^w) of short length whose binary image keeps
//    w-bit symbols aligned with share blocks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isoshare/binary_field.hpp"
#include "isoshare/bits.hpp"
#include "isoshare/error.hpp"
#include "isoshare/linear_code.hpp"

namespace isoshare {

using BinaryCode = LinearCode<Gf2>;
using SymbolCode = LinearCode<BinaryField>;
using BinaryErasureWord = ErasureWord<Gf2>;
using SymbolErasureWord = ErasureWord<BinaryField>;

/// Coefficients in ascending degree order.
using FieldPolynomial = std::vector<BinaryFieldElement>;

struct RSSpec {
    unsigned r = 0;
    unsigned d = 0;
    unsigned m = 0;

    std::size_t length() const { return (std::size_t{1} << r) - 1; }
    std::size_t dimension() const { return (std::size_t{1} << r) - d; }
    friend bool operator==(const RSSpec&, const RSSpec&) = default;
};

inline FieldPolynomial poly_mul(const BinaryField& f, const FieldPolynomial& a, const FieldPolynomial& b) {
    FieldPolynomial out(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    return out;
}

/// Remainder of a / b for monic b.
inline FieldPolynomial poly_mod(const BinaryField& f, FieldPolynomial a, const FieldPolynomial& b) {
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
        auto coef = a[i];
        if (f.is_zero(coef)) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = f.sub(a[i - db + j], f.mul(coef, b[j]));
    }
    a.resize(db);
    return a;
}

/// g(x) = prod_{j=1}^{d-1} (x + tau^(m+j)); monic, degree d - 1.
inline FieldPolynomial rs_generator_poly(unsigned r, unsigned d, unsigned m) {
    BinaryField f(r);
    if (d < 2 || d > f.multiplicative_order())
        fail(ErrorKind::bad_distance,
             "RS distance d=" + std::to_string(d) + " outside [2, " + std::to_string(f.multiplicative_order()) + "]");
    FieldPolynomial g{f.one()};
    for (unsigned j = 1; j < d; ++j) g = poly_mul(f, g, {f.tau_pow(static_cast<std::int64_t>(m) + j), f.one()});
    return g;
}

class ReedSolomonCode {
public:
    explicit ReedSolomonCode(RSSpec spec)
        : spec_(spec), field_(spec.r), generator_poly_(rs_generator_poly(spec.r, spec.d, spec.m)),
          code_(build(spec, field_, generator_poly_)) {}

    const RSSpec& spec() const { return spec_; }
    const BinaryField& field() const { return field_; }
    const FieldPolynomial& generator_poly() const { return generator_poly_; }
    const SymbolCode& code() const { return code_; }
    std::size_t length() const { return spec_.length(); }
    std::size_t dimension() const { return spec_.dimension(); }

    /// Cyclic systematic encoder: position j holds the coefficient of x^(n-1-j),
    /// so the message occupies positions 0..k-1 and the remainder the tail.
    FieldVector<BinaryField> encode_cyclic(std::span<const BinaryFieldElement> msg) const {
        return cyclic_encode(spec_, field_, generator_poly_, msg);
    }

private:
    static FieldVector<BinaryField> cyclic_encode(const RSSpec& spec, const BinaryField& f, const FieldPolynomial& g,
                                                  std::span<const BinaryFieldElement> msg) {
        const std::size_t n = spec.length(), k = spec.dimension();
        if (msg.size() != k)
            fail(ErrorKind::length_mismatch,
                 "RS message length " + std::to_string(msg.size()) + " != " + std::to_string(k));
        FieldPolynomial shifted(n, f.zero());
        for (std::size_t i = 0; i < k; ++i) shifted[n - 1 - i] = msg[i];
        auto rem = poly_mod(f, shifted, g);
        FieldVector<BinaryField> c(n, f.zero());
        for (std::size_t i = 0; i < k; ++i) c[i] = msg[i];
        for (std::size_t deg = 0; deg < rem.size(); ++deg) c[n - 1 - deg] = f.neg(rem[deg]);
        return c;
    }

    static SymbolCode build(const RSSpec& spec, const BinaryField& f, const FieldPolynomial& g) {
        const std::size_t k = spec.dimension();
        FieldMatrix<BinaryField> gen;
        for (std::size_t i = 0; i < k; ++i) {
            FieldVector<BinaryField> unit(k, f.zero());
            unit[i] = f.one();
            gen.push_back(cyclic_encode(spec, f, g, unit));
        }
        return SymbolCode(f, std::move(gen), spec.d);
    }

    RSSpec spec_;
    BinaryField field_;
    FieldPolynomial generator_poly_;
    SymbolCode code_;
};

/// Triply extended RS code [2^r + 2, 3, 2^r] over GF(2^r). Columns are
/// (1, a, a^2) for every a in GF(2^r) in integer order, then (0, 1, 0) and
/// (0, 0, 1).
inline SymbolCode hyperoval_code(unsigned r) {
    if (r < 2) fail(ErrorKind::invalid_argument, "hyperoval code needs r >= 2");
    BinaryField f(r);
    const std::uint64_t q = f.size();
    FieldMatrix<BinaryField> gen(3, FieldVector<BinaryField>(q + 2, f.zero()));
    for (std::uint64_t j = 0; j < q; ++j) {
        auto a = f.element(j);
        gen[0][j] = f.one();
        gen[1][j] = a;
        gen[2][j] = f.mul(a, a);
    }
    gen[1][q] = f.one();
    gen[2][q + 1] = f.one();
    return SymbolCode(f, std::move(gen), static_cast<std::size_t>(q));
}

/// Binary kernel of a GF(2) matrix with `cols` columns, as generator rows.
inline FieldMatrix<Gf2> binary_kernel(FieldMatrix<Gf2> constraints, std::size_t cols) {
    Gf2 f;
    auto pivots = row_reduce(f, constraints, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    FieldMatrix<Gf2> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        FieldVector<Gf2> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = constraints[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Subfield subcode C* = C cap GF(2)^l: each GF(2^r) parity constraint
/// sum_j h_j x_j = 0 with binary x_j splits into r binary constraints, one
/// per coordinate of Phi.
inline BinaryCode subfield_code_from_parity(const SymbolCode& code) {
    const auto& f = code.field();
    const unsigned r = f.degree();
    const std::size_t l = code.length();
    FieldMatrix<Gf2> constraints;
    for (const auto& h : code.parity_check()) {
        for (unsigned t = 0; t < r; ++t) {
            FieldVector<Gf2> row(l);
            for (std::size_t j = 0; j < l; ++j) row[j] = static_cast<std::uint8_t>((h[j].bits >> t) & 1U);
            constraints.push_back(std::move(row));
        }
    }
    return BinaryCode(Gf2{}, l, binary_kernel(std::move(constraints), l));
}

/// Same subcode from the generator side: unknowns are the k*r bits of a
/// message m, constraints say bits 1..r-1 of every coordinate of mG vanish.
inline BinaryCode subfield_code_from_generator(const SymbolCode& code) {
    const auto& f = code.field();
    const unsigned r = f.degree();
    const std::size_t l = code.length(), k = code.dimension();
    const auto& G = code.generator();
    const std::size_t unknowns = k * r;
    FieldMatrix<Gf2> constraints;
    for (std::size_t j = 0; j < l; ++j) {
        for (unsigned s = 1; s < r; ++s) {
            FieldVector<Gf2> row(unknowns, 0);
            for (std::size_t i = 0; i < k; ++i)
                for (unsigned t = 0; t < r; ++t) {
                    auto prod = f.mul(BinaryFieldElement{std::uint32_t{1} << t}, G[i][j]);
                    row[i * r + t] = static_cast<std::uint8_t>((prod.bits >> s) & 1U);
                }
            constraints.push_back(std::move(row));
        }
    }
    FieldMatrix<Gf2> gen;
    for (const auto& v : binary_kernel(std::move(constraints), unknowns)) {
        FieldVector<BinaryField> msg(k, f.zero());
        for (std::size_t i = 0; i < k; ++i)
            for (unsigned t = 0; t < r; ++t)
                if (v[i * r + t]) msg[i].bits |= std::uint32_t{1} << t;
        FieldVector<Gf2> row;
        row.reserve(l);
        for (auto s : code.encode(msg)) row.push_back(static_cast<std::uint8_t>(s.bits & 1U));
        gen.push_back(std::move(row));
    }
    return BinaryCode(Gf2{}, l, std::move(gen));
}

/// Picks whichever linear system is smaller.
inline BinaryCode subfield_code(const SymbolCode& code) {
    if (code.dimension() * code.field().degree() < code.length()) return subfield_code_from_generator(code);
    return subfield_code_from_parity(code);
}

// ---------------------------------------------------------------------------
// Binary expansion C+ of an RS code: each symbol becomes Phi(symbol) followed
// by one parity bit, blocks of r + 1 bits.

inline std::size_t expanded_block_bits(const RSSpec& spec) { return spec.r + 1; }
inline std::size_t expanded_length(const RSSpec& spec) { return (spec.r + 1) * spec.length(); }

inline Bits expand_binary(const ReedSolomonCode& rs, std::span<const BinaryFieldElement> c) {
    if (c.size() != rs.length()) fail(ErrorKind::length_mismatch, "RS word length mismatch");
    Bits out;
    out.reserve(expanded_length(rs.spec()));
    for (auto sym : c) {
        auto bits = rs.field().phi_expand(sym);
        std::uint8_t parity = 0;
        for (auto b : bits) parity ^= b;
        out.insert(out.end(), bits.begin(), bits.end());
        out.push_back(parity);
    }
    return out;
}

/// Blocks with an erased bit or a failing parity become erased symbols.
inline SymbolErasureWord contract_binary(const ReedSolomonCode& rs, const BinaryErasureWord& w) {
    const auto block = expanded_block_bits(rs.spec());
    if (w.size() != expanded_length(rs.spec()))
        fail(ErrorKind::length_mismatch, "binary word length " + std::to_string(w.size()) + " != " +
                                             std::to_string(expanded_length(rs.spec())));
    SymbolErasureWord out(rs.length());
    const unsigned r = rs.spec().r;
    for (std::size_t s = 0; s < rs.length(); ++s) {
        Bits bits(r);
        std::uint8_t parity = 0;
        bool clean = true;
        for (std::size_t b = 0; b < block && clean; ++b) {
            const auto& bit = w[s * block + b];
            if (!bit) clean = false;
            else {
                parity ^= *bit;
                if (b < r) bits[b] = *bit;
            }
        }
        if (clean && parity == 0) out[s] = rs.field().phi_collapse(bits);
    }
    return out;
}

/// Generator of C+ over GF(2), dimension r*k.
inline BinaryCode binary_expanded_code(const ReedSolomonCode& rs) {
    const auto& f = rs.field();
    const unsigned r = rs.spec().r;
    FieldMatrix<Gf2> gen;
    for (std::size_t i = 0; i < rs.dimension(); ++i) {
        for (unsigned b = 0; b < r; ++b) {
            FieldVector<BinaryField> msg(rs.dimension(), f.zero());
            msg[i] = BinaryFieldElement{std::uint32_t{1} << b};
            gen.push_back(expand_binary(rs, rs.code().encode(msg)));
        }
    }
    return BinaryCode(Gf2{}, std::move(gen), 2 * static_cast<std::size_t>(rs.spec().d));
}

/// Smallest epsilon with gamma <= (epsilon - 1) r + 1.
constexpr std::size_t burst_epsilon(std::size_t gamma, std::size_t r) {
    if (gamma == 0 || r == 0) return 0;
    return (gamma - 1 + r - 1) / r + 1;
}

/// Number of `block`-bit symbols touched by bits [start, start + len).
constexpr std::size_t blocks_touched(std::size_t start, std::size_t len, std::size_t block) {
    if (len == 0) return 0;
    return (start + len - 1) / block - start / block + 1;
}

// ---------------------------------------------------------------------------
// Block code: RS over GF(2^w) evaluated at tau^0..tau^(n-1), dimension
// n - d + 1, binary image with w bits per symbol. With w = gamma every share
// holds exactly one symbol, so any n - d + 1 shares determine the codeword.

struct BlockCodeSpec {
    unsigned symbol_bits = 0;
    std::size_t blocks = 0;
    std::size_t distance = 0;

    std::size_t symbol_dimension() const { return blocks - distance + 1; }
    friend bool operator==(const BlockCodeSpec&, const BlockCodeSpec&) = default;
};

inline SymbolCode block_symbol_code(const BlockCodeSpec& spec) {
    BinaryField f(spec.symbol_bits);
    if (spec.blocks == 0 || spec.blocks > f.multiplicative_order())
        fail(ErrorKind::invalid_argument, "block code needs 1 <= n <= 2^w - 1");
    if (spec.distance < 1 || spec.distance > spec.blocks)
        fail(ErrorKind::bad_distance, "block code distance must lie in [1, n]");
    FieldMatrix<BinaryField> gen;
    for (std::size_t i = 0; i < spec.symbol_dimension(); ++i) {
        FieldVector<BinaryField> row;
        for (std::size_t j = 0; j < spec.blocks; ++j) row.push_back(f.pow(f.tau_pow(static_cast<std::int64_t>(j)), i));
        gen.push_back(std::move(row));
    }
    return SymbolCode(f, std::move(gen), spec.distance);
}

inline BinaryCode block_binary_code(const BlockCodeSpec& spec) {
    auto sym = block_symbol_code(spec);
    const auto& f = sym.field();
    FieldMatrix<Gf2> gen;
    for (std::size_t i = 0; i < sym.dimension(); ++i) {
        for (unsigned b = 0; b < spec.symbol_bits; ++b) {
            FieldVector<BinaryField> msg(sym.dimension(), f.zero());
            msg[i] = BinaryFieldElement{std::uint32_t{1} << b};
            Bits row;
            for (auto s : sym.encode(msg)) {
                auto bits = f.phi_expand(s);
                row.insert(row.end(), bits.begin(), bits.end());
            }
            gen.push_back(std::move(row));
        }
    }
    return BinaryCode(Gf2{}, std::move(gen), spec.distance);
}

} // namespace isoshare
