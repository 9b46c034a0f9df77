#pragma once

// The threshold scheme T(n, t, gamma).
//
// Dealing: P' = I(P); w = psi(E0, P) || psi(E1, P') (zero padded to k bits);
// c = encode(w), a binary codeword of length gamma * n; participant i gets
// bits [i * gamma, (i + 1) * gamma) of c.
//
// Recovery: missing shares become erased bit blocks, the code fills them in,
// the message splits back into the two point encodings, and the recovery
// oracle reconstructs the isogeny from (E0, P, E1, P').

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isoshare/bits.hpp"
#include "isoshare/codes.hpp"
#include "isoshare/curve.hpp"
#include "isoshare/error.hpp"
#include "isoshare/isogeny.hpp"
#include "isoshare/point_codec.hpp"

namespace isoshare {

// ---------------------------------------------------------------------------
// Parameters

enum class CodeKind {
    /// RS over GF(2^gamma) with one symbol per share (generic provenance).
    block_rs,
    /// Binary subfield subcode of the hyperoval code [2^r + 2, 3, 2^r].
    subfield_hyperoval,
    /// Binary expansion C+ of RS(2^r, d) with per-symbol parity.
    binary_expanded_rs,
    /// Only [length, dimension, distance] known; validation only.
    abstract_generic,
};

enum class CodeProvenance { generic, subfield_of_hyperoval, binary_expanded_rs };

constexpr CodeProvenance provenance(CodeKind kind) {
    switch (kind) {
    case CodeKind::subfield_hyperoval: return CodeProvenance::subfield_of_hyperoval;
    case CodeKind::binary_expanded_rs: return CodeProvenance::binary_expanded_rs;
    default: return CodeProvenance::generic;
    }
}

constexpr std::string_view to_string(CodeKind kind) {
    switch (kind) {
    case CodeKind::block_rs: return "block-rs";
    case CodeKind::subfield_hyperoval: return "subfield-hyperoval";
    case CodeKind::binary_expanded_rs: return "binary-expanded-rs";
    case CodeKind::abstract_generic: return "abstract";
    }
    return "?";
}

constexpr std::string_view to_string(CodeProvenance p) {
    switch (p) {
    case CodeProvenance::generic: return "generic";
    case CodeProvenance::subfield_of_hyperoval: return "subfield-of-hyperoval";
    case CodeProvenance::binary_expanded_rs: return "binary-expanded-RS";
    }
    return "?";
}

struct CodeDescriptor {
    CodeKind kind = CodeKind::binary_expanded_rs;
    /// Field degree for RS / hyperoval codes.
    unsigned r = 0;
    /// RS designed distance, or the symbol distance of a block code.
    unsigned d = 0;
    /// RS root offset.
    unsigned m = 0;
    /// abstract_generic only; distance 0 means unknown.
    std::size_t length = 0, dimension = 0, distance = 0;

    friend bool operator==(const CodeDescriptor&, const CodeDescriptor&) = default;
};

struct SchemeParams {
    std::size_t n = 0;
    std::size_t t = 0;
    std::size_t gamma = 0;
    std::size_t lambda = 128;
    CurveSpec curve{431, 1, 0};
    /// N, the order of the encoded torsion point.
    std::uint64_t torsion_order = 0;
    /// The secret has degree iso_prime^iso_exponent.
    std::uint64_t iso_prime = 0;
    unsigned iso_exponent = 0;
    CodeDescriptor code;

    std::uint64_t isogeny_degree() const { return ipow(iso_prime, iso_exponent); }
    friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

struct Share {
    std::size_t index = 0;
    Bits bits;
    friend bool operator==(const Share&, const Share&) = default;
};

// ---------------------------------------------------------------------------
// Realized codes

class SchemeCode {
public:
    SchemeCode(CodeKind kind, BinaryCode binary, std::shared_ptr<const ReedSolomonCode> rs = nullptr)
        : kind_(kind), binary_(std::move(binary)), rs_(std::move(rs)) {}

    static SchemeCode build(const SchemeParams& params) {
        const auto& c = params.code;
        switch (c.kind) {
        case CodeKind::binary_expanded_rs: {
            auto rs = std::make_shared<const ReedSolomonCode>(RSSpec{c.r, c.d, c.m});
            auto binary = binary_expanded_code(*rs);
            return SchemeCode(c.kind, std::move(binary), std::move(rs));
        }
        case CodeKind::block_rs:
            if (params.gamma == 0 || params.gamma > max_binary_field_degree)
                fail(ErrorKind::invalid_params, "block-rs needs 1 <= gamma <= 31");
            return SchemeCode(c.kind, block_binary_code({static_cast<unsigned>(params.gamma), params.n, c.d}));
        case CodeKind::subfield_hyperoval:
            return SchemeCode(c.kind, subfield_code(hyperoval_code(c.r)));
        case CodeKind::abstract_generic: break;
        }
        fail(ErrorKind::invalid_params, "an abstract code descriptor cannot be realized");
    }

    CodeKind kind() const { return kind_; }
    const BinaryCode& binary() const { return binary_; }
    /// Base RS code for binary_expanded_rs, otherwise null.
    const ReedSolomonCode* rs() const { return rs_.get(); }
    std::size_t length() const { return binary_.length(); }
    std::size_t dimension() const { return binary_.dimension(); }

private:
    CodeKind kind_;
    BinaryCode binary_;
    std::shared_ptr<const ReedSolomonCode> rs_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Violation {
    threshold_out_of_range,
    below_dimension_bound,
    above_security_bound,
    insufficient_erasure_capability,
    degree_not_coprime,
    length_mismatch,
    torsion_order_not_divisor,
    invalid_isogeny_prime,
    message_too_short,
    curve_not_supersingular,
    invalid_code,
};

constexpr std::string_view to_string(Violation v) {
    switch (v) {
    case Violation::threshold_out_of_range: return "threshold_out_of_range";
    case Violation::below_dimension_bound: return "below_dimension_bound";
    case Violation::above_security_bound: return "above_security_bound";
    case Violation::insufficient_erasure_capability: return "insufficient_erasure_capability";
    case Violation::degree_not_coprime: return "degree_not_coprime";
    case Violation::length_mismatch: return "length_mismatch";
    case Violation::torsion_order_not_divisor: return "torsion_order_not_divisor";
    case Violation::invalid_isogeny_prime: return "invalid_isogeny_prime";
    case Violation::message_too_short: return "message_too_short";
    case Violation::curve_not_supersingular: return "curve_not_supersingular";
    case Violation::invalid_code: return "invalid_code";
    }
    return "?";
}

struct Issue {
    Violation kind;
    std::string detail;
};

struct ThresholdInterval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    bool empty() const { return hi < lo; }
    bool contains(std::int64_t t) const { return lo <= t && t <= hi; }
};

/// ceil(k / gamma) <= t <= floor(n - lambda / gamma + 1).
inline ThresholdInterval threshold_interval(std::size_t n, std::size_t k, std::size_t gamma, std::size_t lambda) {
    if (gamma == 0) return {};
    auto g = static_cast<std::int64_t>(gamma);
    auto lo = (static_cast<std::int64_t>(k) + g - 1) / g;
    auto hi = static_cast<std::int64_t>(n) + 1 - (static_cast<std::int64_t>(lambda) + g - 1) / g;
    return {lo, hi};
}

/// Brute-force exponent facing a coalition that holds s shares: gamma (n - s).
inline std::size_t attack_cost_bits(const SchemeParams& params, std::size_t s) {
    if (s > params.n) fail(ErrorKind::invalid_argument, "coalition larger than n");
    return params.gamma * (params.n - s);
}

struct CodeParameters {
    std::size_t length = 0;
    std::size_t dimension = 0;
    /// Lower bound on the binary minimum distance (exact when distance_exact).
    std::size_t distance = 0;
    bool distance_exact = false;
};

struct BurstConditions {
    bool r_exceeds_gamma_minus_2 = false;
    bool distance_covers_double_erasures = false;
    std::size_t epsilon = 0;
    bool holds() const { return r_exceeds_gamma_minus_2 && distance_covers_double_erasures; }
};

struct ValidationReport {
    std::vector<Issue> violations;
    std::vector<std::string> warnings;
    CodeParameters code;
    ThresholdInterval interval;
    /// Erasures the decoder must fill for n - t missing shares, in the
    /// decoder's own symbols (bits, RS symbols or block symbols).
    std::size_t worst_case_erasures = 0;
    std::size_t correctable_erasures = 0;
    std::optional<BurstConditions> burst;

    bool ok() const { return violations.empty(); }
    bool has(Violation v) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Issue& i) { return i.kind == v; });
    }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) s += std::string(to_string(v.kind)) + ": " + v.detail + "; ";
        return s;
    }
};

/// Indices of the RS symbols touched by share i in the C+ layout.
inline std::pair<std::size_t, std::size_t> share_symbol_span(const RSSpec& spec, std::size_t gamma, std::size_t i) {
    const auto block = expanded_block_bits(spec);
    return {i * gamma / block, ((i + 1) * gamma - 1) / block};
}

namespace detail {

/// Calls visit(indices) for every k-subset of {0..n-1}; stops when visit returns false.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
        if (!visit(std::as_const(idx))) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (std::uint64_t{1} << 40)) return r;
    }
    return r;
}

/// Largest number of RS symbols erased by n - t missing shares.
inline std::size_t worst_symbol_erasures(const RSSpec& spec, std::size_t gamma, std::size_t n, std::size_t missing) {
    if (missing == 0) return 0;
    if (binomial(n, missing) <= 200000) {
        std::size_t worst = 0;
        for_each_subset(n, missing, [&](const std::vector<std::size_t>& set) {
            std::set<std::size_t> symbols;
            for (auto i : set) {
                auto [lo, hi] = share_symbol_span(spec, gamma, i);
                for (auto s = lo; s <= hi; ++s) symbols.insert(s);
            }
            worst = std::max(worst, symbols.size());
            return true;
        });
        return worst;
    }
    // Upper bound: the sum of the largest per-share counts.
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
        auto [lo, hi] = share_symbol_span(spec, gamma, i);
        counts.push_back(hi - lo + 1);
    }
    std::sort(counts.rbegin(), counts.rend());
    return std::accumulate(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(missing), std::size_t{0});
}

inline std::uint64_t largest_square_divisor(std::uint64_t n) {
    std::uint64_t sq = 1;
    for (const auto& [q, e] : factorize(n)) sq *= ipow(q, e - e % 2);
    return sq;
}

} // namespace detail

/// Structural parameters of the code without running a decoder.
inline CodeParameters code_parameters(const SchemeParams& params) {
    const auto& c = params.code;
    CodeParameters out;
    switch (c.kind) {
    case CodeKind::binary_expanded_rs: {
        RSSpec spec{c.r, c.d, c.m};
        out.length = expanded_length(spec);
        out.dimension = c.r * spec.dimension();
        out.distance = 2 * std::size_t{c.d};
        break;
    }
    case CodeKind::block_rs:
        out.length = params.gamma * params.n;
        out.dimension = params.gamma * (params.n + 1 - c.d);
        out.distance = c.d;
        break;
    case CodeKind::subfield_hyperoval: {
        auto code = subfield_code(hyperoval_code(c.r));
        out.length = code.length();
        out.dimension = code.dimension();
        out.distance = min_distance_bruteforce(code);
        out.distance_exact = true;
        break;
    }
    case CodeKind::abstract_generic:
        out.length = c.length;
        out.dimension = c.dimension;
        out.distance = c.distance;
        out.distance_exact = c.distance != 0;
        break;
    }
    return out;
}

inline ValidationReport validate_params(const SchemeParams& params) {
    ValidationReport rep;
    auto violate = [&](Violation v, std::string detail) { rep.violations.push_back({v, std::move(detail)}); };
    const auto& c = params.code;
    const std::size_t n = params.n, t = params.t, gamma = params.gamma;

    try {
        if (c.kind == CodeKind::binary_expanded_rs) {
            if (c.r < 1 || c.r > 16) throw Error(ErrorKind::invalid_params, "RS field degree must lie in [1, 16]");
            if (c.d < 2 || c.d > (1U << c.r) - 1) throw Error(ErrorKind::bad_distance, "RS distance out of range");
        } else if (c.kind == CodeKind::block_rs) {
            if (gamma < 1 || gamma > max_binary_field_degree)
                throw Error(ErrorKind::invalid_params, "block-rs needs 1 <= gamma <= 31");
            if (n < 1 || n > (std::size_t{1} << gamma) - 1)
                throw Error(ErrorKind::invalid_params, "block-rs needs n <= 2^gamma - 1");
            if (c.d < 1 || c.d > n) throw Error(ErrorKind::bad_distance, "block distance must lie in [1, n]");
        } else if (c.kind == CodeKind::subfield_hyperoval) {
            if (c.r < 2 || c.r > 12) throw Error(ErrorKind::invalid_params, "hyperoval needs 2 <= r <= 12");
        }
        rep.code = code_parameters(params);
        if (c.kind == CodeKind::abstract_generic && (c.dimension == 0 || c.dimension > c.length))
            violate(Violation::invalid_code, "abstract code needs 0 < k <= length");
    } catch (const Error& e) {
        violate(Violation::invalid_code, e.what());
        return rep;
    }
    const std::size_t k = rep.code.dimension;
    rep.interval = threshold_interval(n, k, gamma, params.lambda);

    if (gamma == 0 || n == 0) violate(Violation::length_mismatch, "gamma and n must be positive");
    if (rep.code.length != gamma * n)
        violate(Violation::length_mismatch, "code length " + std::to_string(rep.code.length) +
                                                " != gamma * n = " + std::to_string(gamma * n));
    if (t < 1 || t > n) violate(Violation::threshold_out_of_range, "need 1 <= t <= n");
    if (static_cast<std::int64_t>(t) < rep.interval.lo)
        violate(Violation::below_dimension_bound,
                "t = " + std::to_string(t) + " < k/gamma (needs t >= " + std::to_string(rep.interval.lo) + ")");
    if (static_cast<std::int64_t>(t) > rep.interval.hi)
        violate(Violation::above_security_bound, "t = " + std::to_string(t) + " > n - lambda/gamma + 1 = " +
                                                      std::to_string(rep.interval.hi));

    // Erasure capability against n - t missing shares.
    const std::size_t missing = t <= n ? n - t : 0;
    switch (c.kind) {
    case CodeKind::binary_expanded_rs: {
        RSSpec spec{c.r, c.d, c.m};
        rep.worst_case_erasures = rep.code.length == gamma * n ? detail::worst_symbol_erasures(spec, gamma, n, missing)
                                                               : missing * gamma;
        rep.correctable_erasures = c.d - 1;
        rep.burst = BurstConditions{c.r + 2 > gamma, c.d >= 2 * missing + 1, burst_epsilon(gamma, c.r)};
        break;
    }
    case CodeKind::block_rs:
        rep.worst_case_erasures = missing;
        rep.correctable_erasures = c.d - 1;
        break;
    case CodeKind::subfield_hyperoval:
    case CodeKind::abstract_generic:
        rep.worst_case_erasures = gamma * missing;
        rep.correctable_erasures = rep.code.distance == 0 ? gamma * missing : rep.code.distance - 1;
        if (rep.code.distance == 0) rep.warnings.push_back("code distance unknown; erasure capability not checked");
        break;
    }
    if (rep.worst_case_erasures > rep.correctable_erasures)
        violate(Violation::insufficient_erasure_capability,
                std::to_string(n - std::min(t, n)) + " missing shares erase up to " +
                    std::to_string(rep.worst_case_erasures) + " symbols, code corrects " +
                    std::to_string(rep.correctable_erasures));

    // Curve, torsion and isogeny shape.
    const auto& E = params.curve;
    const std::uint64_t N = params.torsion_order;
    if (N < 2 || E.group_exponent() % N != 0)
        violate(Violation::torsion_order_not_divisor,
                "N = " + std::to_string(N) + " must be >= 2 and divide p+1 = " + std::to_string(E.group_exponent()));
    if (params.iso_exponent > 0 && (!is_prime(params.iso_prime) || E.group_exponent() % params.iso_prime != 0))
        violate(Violation::invalid_isogeny_prime,
                "isogeny prime " + std::to_string(params.iso_prime) + " must be a prime dividing p+1");
    if (params.iso_exponent > 0 && N > 0 && std::gcd(N, params.iso_prime) != 1)
        violate(Violation::degree_not_coprime, "gcd(N, d) != 1");
    {
        std::mt19937_64 rng(0xc0ffee);
        bool ss = true;
        for (int i = 0; i < 40 && ss; ++i)
            ss = detail::mul_unchecked(E, E.group_exponent(), random_point(E, rng)).infinity;
        if (!ss) violate(Violation::curve_not_supersingular, "(p+1)P != O for a sampled point");
    }
    if (k / 2 < min_point_bits(E.p()))
        violate(Violation::message_too_short, "k/2 = " + std::to_string(k / 2) + " bits cannot hold a point (needs " +
                                                  std::to_string(min_point_bits(E.p())) + ")");
    if (N >= 2) {
        auto sq = detail::largest_square_divisor(N);
        if (sq * sq < N)
            rep.warnings.push_back("N = " + std::to_string(N) +
                                   " lacks a large smooth square factor (largest square divisor " +
                                   std::to_string(sq) + ")");
    }
    if (rep.interval.empty()) rep.warnings.push_back("no valid t for these (n, k, gamma, lambda)");
    return rep;
}

// ---------------------------------------------------------------------------
// Distribution

inline std::vector<Share> distribute_f(std::span<const std::uint8_t> codeword, std::size_t gamma, std::size_t n) {
    if (gamma == 0 || codeword.size() != gamma * n)
        fail(ErrorKind::length_mismatch,
             "codeword has " + std::to_string(codeword.size()) + " bits, expected gamma*n = " + std::to_string(gamma * n));
    std::vector<Share> shares;
    shares.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        shares.push_back({i, Bits(codeword.begin() + static_cast<std::ptrdiff_t>(i * gamma),
                                  codeword.begin() + static_cast<std::ptrdiff_t>((i + 1) * gamma))});
    return shares;
}

/// Public data distributed alongside the shares.
struct PublicContext {
    SchemeParams params;
    CurveSpec e1{431, 1, 0};
};

struct DealResult {
    std::vector<Share> shares;
    PublicContext context;
    /// The codeword c; not distributed, kept for auditing and tests.
    Bits codeword;
};

struct Recovered {
    IsogenyChain chain;
    CurvePoint point;
    CurvePoint image;
    /// Erased symbols the decoder filled (bits for the generic path).
    std::size_t erasures = 0;
};

inline DealResult share_isogeny_path(const IsogenyChain& secret, const CurvePoint& P, const SchemeParams& params,
                                     bool force = false) {
    auto report = validate_params(params);
    if (!report.ok() && !force) fail(ErrorKind::invalid_params, report.summary());
    if (!(secret.domain() == params.curve)) fail(ErrorKind::invalid_argument, "secret isogeny does not start at E0");
    if (point_order(params.curve, P) != params.torsion_order)
        fail(ErrorKind::invalid_argument, "P does not have order N = " + std::to_string(params.torsion_order));

    auto code = SchemeCode::build(params);
    if (code.length() != params.gamma * params.n)
        fail(ErrorKind::invalid_params, "code length differs from gamma * n");
    const std::size_t k = code.dimension();
    const std::size_t L = k / 2;

    CurvePoint image = evaluate_chain(secret, P);
    const CurveSpec& E1 = secret.codomain();
    Bits w = encode_point(params.curve, P, L).bits;
    auto s_image = encode_point(E1, image, L).bits;
    w.insert(w.end(), s_image.begin(), s_image.end());
    w.resize(k, 0);

    DealResult out{{}, {params, E1}, code.binary().encode(w)};
    out.shares = distribute_f(out.codeword, params.gamma, params.n);
    return out;
}

namespace detail {

inline BinaryErasureWord place_shares(std::span<const Share> shares, const SchemeParams& params) {
    BinaryErasureWord y(params.gamma * params.n);
    std::vector<bool> seen(params.n, false);
    for (const auto& s : shares) {
        if (s.index >= params.n) fail(ErrorKind::invalid_argument, "share index " + std::to_string(s.index) + " >= n");
        if (seen[s.index]) fail(ErrorKind::duplicate_share, "share index " + std::to_string(s.index) + " repeated");
        if (s.bits.size() != params.gamma)
            fail(ErrorKind::length_mismatch, "share " + std::to_string(s.index) + " has " +
                                                 std::to_string(s.bits.size()) + " bits, expected gamma");
        seen[s.index] = true;
        for (std::size_t j = 0; j < params.gamma; ++j) y[s.index * params.gamma + j] = s.bits[j];
    }
    return y;
}

/// Message split, point decoding and the oracle call.
inline Recovered finish_recovery(const Bits& w, const PublicContext& ctx) {
    const auto& params = ctx.params;
    const std::size_t L = w.size() / 2;
    for (std::size_t i = 2 * L; i < w.size(); ++i)
        if (w[i]) fail(ErrorKind::invalid_encoding, "nonzero message padding");
    PointBits sp{Bits(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(L))};
    PointBits si{Bits(w.begin() + static_cast<std::ptrdiff_t>(L), w.begin() + static_cast<std::ptrdiff_t>(2 * L))};
    auto P = decode_point(params.curve, sp);
    auto image = decode_point(ctx.e1, si);
    auto chain = recover_isogeny(params.curve, ctx.e1, P, image, params.iso_prime, params.iso_exponent);
    return {std::move(chain), P, image, 0};
}

} // namespace detail

/// Generic recovery: erasure decoding over the binary code itself.
inline Recovered recover_isogeny_path(std::span<const Share> shares, const PublicContext& ctx) {
    const auto& params = ctx.params;
    auto y = detail::place_shares(shares, params);
    auto code = SchemeCode::build(params);
    auto sol = code.binary().solve_erasures(y);
    if (sol.outcome == ErasureOutcome::ambiguous)
        fail(ErrorKind::not_enough_shares, "ambiguous decoding: " + std::to_string(sol.free_dimension) +
                                               " unresolved dimension(s) with " + std::to_string(shares.size()) +
                                               " share(s)");
    if (sol.outcome == ErasureOutcome::inconsistent)
        fail(ErrorKind::inconsistent, "shares are not consistent with any codeword");
    auto w = code.binary().extract(sol.codeword);
    auto out = detail::finish_recovery(w, ctx);
    out.erasures = static_cast<std::size_t>(std::count(y.begin(), y.end(), std::nullopt));
    return out;
}

enum class BurstPolicy {
    /// Reject parameter sets outside r > gamma - 2 and d >= 2(n - t) + 1.
    enforce,
    /// Attempt decoding regardless; failures surface from the decoder.
    unchecked,
};

/// Recovery through the base RS code: known bit blocks collapse to symbols,
/// any symbol touched by a missing share becomes an erasure.
inline Recovered burst_recover(std::span<const Share> shares, const PublicContext& ctx,
                               BurstPolicy policy = BurstPolicy::enforce) {
    const auto& params = ctx.params;
    if (params.code.kind != CodeKind::binary_expanded_rs)
        fail(ErrorKind::invalid_params, "burst recovery needs a binary-expanded RS code");
    const auto& c = params.code;
    if (policy == BurstPolicy::enforce) {
        const std::size_t missing = params.t <= params.n ? params.n - params.t : 0;
        if (!(c.r + 2 > params.gamma))
            fail(ErrorKind::invalid_params, "burst recovery needs r > gamma - 2");
        if (!(c.d >= 2 * missing + 1))
            fail(ErrorKind::invalid_params, "burst recovery needs d >= 2(n - t) + 1");
    }
    auto y = detail::place_shares(shares, params);
    auto code = SchemeCode::build(params);
    const auto& rs = *code.rs();
    if (y.size() != expanded_length(rs.spec()))
        fail(ErrorKind::invalid_params, "code length differs from gamma * n");

    auto symbols = contract_binary(rs, y);
    auto erased = static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), std::nullopt));
    auto sol = rs.code().solve_erasures(symbols);
    if (sol.outcome == ErasureOutcome::ambiguous)
        fail(ErrorKind::not_enough_shares, std::to_string(erased) + " erased RS symbols exceed what d = " +
                                               std::to_string(c.d) + " can fill");
    if (sol.outcome == ErasureOutcome::inconsistent)
        fail(ErrorKind::inconsistent, "shares are not consistent with any RS codeword");

    auto expanded = expand_binary(rs, sol.codeword);
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] && *y[j] != expanded[j]) fail(ErrorKind::inconsistent, "decoded codeword disagrees with a share bit");
    auto w = code.binary().extract(expanded);
    auto out = detail::finish_recovery(w, ctx);
    out.erasures = erased;
    return out;
}

} // namespace isoshare
