#pragma once

// Linear codes over a finite field descriptor. A code is held as its
// generator in reduced row echelon form; the pivot columns form the
// information set, so encoding places the message there verbatim. For codes
// whose first k columns are independent (RS, block codes) that is the prefix.
//
// Erasure decoding solves the parity-check system restricted to the erased
// coordinates by elimination.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isoshare/error.hpp"

namespace isoshare {

template <class F>
concept FieldDescriptor = requires(const F f, typename F::Element a, std::uint64_t i) {
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.add(a, a) } -> std::same_as<typename F::Element>;
    { f.sub(a, a) } -> std::same_as<typename F::Element>;
    { f.neg(a) } -> std::same_as<typename F::Element>;
    { f.mul(a, a) } -> std::same_as<typename F::Element>;
    { f.inv(a) } -> std::same_as<typename F::Element>;
    { f.size() } -> std::convertible_to<std::uint64_t>;
    { f.element(i) } -> std::same_as<typename F::Element>;
    { f.index(a) } -> std::convertible_to<std::uint64_t>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
};

template <FieldDescriptor F>
using FieldVector = std::vector<typename F::Element>;

template <FieldDescriptor F>
using FieldMatrix = std::vector<FieldVector<F>>;

/// A received word; std::nullopt marks an erasure.
template <FieldDescriptor F>
using ErasureWord = std::vector<std::optional<typename F::Element>>;

/// Row-reduce `m` in place using the first `pivot_cols` columns.
/// Returns the pivot column of each nonzero row, in row order.
template <FieldDescriptor F>
std::vector<std::size_t> row_reduce(const F& f, FieldMatrix<F>& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && f.is_zero(m[sel][col])) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        auto inv = f.inv(m[row][col]);
        for (auto& v : m[row]) v = f.mul(v, inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || f.is_zero(m[r][col])) continue;
            auto factor = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c)
                m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

enum class ErasureOutcome { unique, ambiguous, inconsistent };

template <FieldDescriptor F>
struct ErasureSolution {
    ErasureOutcome outcome = ErasureOutcome::inconsistent;
    /// Filled when outcome == unique.
    FieldVector<F> codeword;
    /// Dimension of the affine space of consistent codewords (when consistent).
    std::size_t free_dimension = 0;
};

template <FieldDescriptor F>
class LinearCode {
public:
    using Element = typename F::Element;
    using Vector = FieldVector<F>;
    using Matrix = FieldMatrix<F>;

    /// Rows of `generator` must be linearly independent.
    LinearCode(F field, Matrix generator, std::optional<std::size_t> designed_distance = std::nullopt)
        : field_(std::move(field)), length_(generator.empty() ? 0 : generator.front().size()),
          designed_distance_(designed_distance) {
        init(std::move(generator));
    }

    /// Explicit length; allows the zero code (no generator rows).
    LinearCode(F field, std::size_t length, Matrix generator,
               std::optional<std::size_t> designed_distance = std::nullopt)
        : field_(std::move(field)), length_(length), designed_distance_(designed_distance) {
        init(std::move(generator));
    }

private:
    void init(Matrix generator) {
        if (length_ == 0) fail(ErrorKind::invalid_argument, "code length must be positive");
        for (const auto& row : generator)
            if (row.size() != length_) fail(ErrorKind::length_mismatch, "ragged generator matrix");
        const std::size_t rows = generator.size();
        info_set_ = row_reduce(field_, generator, length_);
        if (info_set_.size() != rows) fail(ErrorKind::invalid_argument, "generator matrix is rank deficient");
        generator_ = std::move(generator);
        build_parity_check();
    }

public:
    const F& field() const { return field_; }
    std::size_t length() const { return length_; }
    std::size_t dimension() const { return generator_.size(); }
    std::optional<std::size_t> designed_distance() const { return designed_distance_; }
    const Matrix& generator() const { return generator_; }
    const Matrix& parity_check() const { return parity_check_; }
    std::span<const std::size_t> information_set() const { return info_set_; }

    Vector encode(std::span<const Element> msg) const {
        if (msg.size() != dimension())
            fail(ErrorKind::length_mismatch,
                 "message length " + std::to_string(msg.size()) + " != dimension " + std::to_string(dimension()));
        Vector c(length_, field_.zero());
        for (std::size_t i = 0; i < msg.size(); ++i) {
            if (field_.is_zero(msg[i])) continue;
            for (std::size_t j = 0; j < length_; ++j)
                c[j] = field_.add(c[j], field_.mul(msg[i], generator_[i][j]));
        }
        return c;
    }

    bool contains(std::span<const Element> c) const {
        if (c.size() != length_) return false;
        for (const auto& h : parity_check_) {
            Element s = field_.zero();
            for (std::size_t j = 0; j < length_; ++j) s = field_.add(s, field_.mul(h[j], c[j]));
            if (!field_.is_zero(s)) return false;
        }
        return true;
    }

    /// Inverse of encode: the information-set coordinates of a codeword.
    Vector extract(std::span<const Element> c) const {
        if (c.size() != length_) fail(ErrorKind::length_mismatch, "word length mismatch");
        if (!contains(c)) fail(ErrorKind::not_a_codeword, "word violates a parity check");
        Vector msg;
        msg.reserve(info_set_.size());
        for (auto j : info_set_) msg.push_back(c[j]);
        return msg;
    }

    ErasureSolution<F> solve_erasures(const ErasureWord<F>& y) const {
        if (y.size() != length_) fail(ErrorKind::length_mismatch, "received word length mismatch");
        std::vector<std::size_t> unknown;
        for (std::size_t j = 0; j < length_; ++j)
            if (!y[j]) unknown.push_back(j);

        // Augmented system: H_U * x_U = -H_K * y_K.
        Matrix system;
        system.reserve(parity_check_.size());
        for (const auto& h : parity_check_) {
            Vector row(unknown.size() + 1, field_.zero());
            for (std::size_t u = 0; u < unknown.size(); ++u) row[u] = h[unknown[u]];
            Element rhs = field_.zero();
            for (std::size_t j = 0; j < length_; ++j)
                if (y[j]) rhs = field_.sub(rhs, field_.mul(h[j], *y[j]));
            row.back() = rhs;
            system.push_back(std::move(row));
        }
        auto pivots = row_reduce(field_, system, unknown.size() + 1);

        ErasureSolution<F> out;
        if (!pivots.empty() && pivots.back() == unknown.size()) {
            out.outcome = ErasureOutcome::inconsistent;
            return out;
        }
        out.free_dimension = unknown.size() - pivots.size();
        if (out.free_dimension > 0) {
            out.outcome = ErasureOutcome::ambiguous;
            return out;
        }
        out.outcome = ErasureOutcome::unique;
        out.codeword.resize(length_);
        for (std::size_t j = 0; j < length_; ++j)
            if (y[j]) out.codeword[j] = *y[j];
        for (std::size_t r = 0; r < pivots.size(); ++r) out.codeword[unknown[pivots[r]]] = system[r].back();
        return out;
    }

    Vector erasure_decode(const ErasureWord<F>& y) const {
        auto sol = solve_erasures(y);
        switch (sol.outcome) {
        case ErasureOutcome::unique: return std::move(sol.codeword);
        case ErasureOutcome::ambiguous:
            fail(ErrorKind::ambiguous, std::to_string(sol.free_dimension) + " free dimension(s) among erased symbols");
        case ErasureOutcome::inconsistent: break;
        }
        fail(ErrorKind::inconsistent, "no codeword agrees with the known symbols");
    }

private:
    void build_parity_check() {
        // For each non-pivot column j: c_j - sum_i G[i][j] * c_{pivot_i} = 0.
        std::vector<bool> is_pivot(length_, false);
        for (auto j : info_set_) is_pivot[j] = true;
        for (std::size_t j = 0; j < length_; ++j) {
            if (is_pivot[j]) continue;
            Vector h(length_, field_.zero());
            h[j] = field_.one();
            for (std::size_t i = 0; i < info_set_.size(); ++i)
                h[info_set_[i]] = field_.neg(generator_[i][j]);
            parity_check_.push_back(std::move(h));
        }
    }

    F field_;
    std::size_t length_ = 0;
    Matrix generator_;
    Matrix parity_check_;
    std::vector<std::size_t> info_set_;
    std::optional<std::size_t> designed_distance_;
};

/// Visits every codeword; requires q^k <= 2^20.
template <FieldDescriptor F, class Visit>
void for_each_codeword(const LinearCode<F>& code, Visit&& visit) {
    const auto& f = code.field();
    const std::uint64_t q = f.size();
    const std::size_t k = code.dimension();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > (std::uint64_t{1} << 20) / q) fail(ErrorKind::too_large, "codeword enumeration exceeds 2^20");
        total *= q;
    }
    std::vector<std::uint64_t> digits(k, 0);
    FieldVector<F> msg(k, f.zero());
    for (std::uint64_t n = 0; n < total; ++n) {
        visit(code.encode(msg));
        for (std::size_t i = 0; i < k; ++i) {
            if (++digits[i] < q) {
                msg[i] = f.element(digits[i]);
                break;
            }
            digits[i] = 0;
            msg[i] = f.zero();
        }
    }
}

template <FieldDescriptor F>
std::size_t hamming_weight(const F& f, std::span<const typename F::Element> v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [&](auto x) { return !f.is_zero(x); }));
}

/// Minimum nonzero weight by full enumeration (test oracle).
template <FieldDescriptor F>
std::size_t min_distance_bruteforce(const LinearCode<F>& code) {
    std::size_t best = code.length() + 1;
    for_each_codeword(code, [&](const FieldVector<F>& c) {
        auto w = hamming_weight<F>(code.field(), c);
        if (w > 0) best = std::min(best, w);
    });
    // The zero code has no nonzero word; report length + 1 in that case.
    return best;
}

} // namespace isoshare
