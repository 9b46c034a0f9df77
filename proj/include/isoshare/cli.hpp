#pragma once

// Command implementations behind the `isoshare` binary. Each returns the
// process exit code and writes `key: value` lines to `out`, diagnostics to `err`.
//
// Exit codes:
//   0 success
//   1 unexpected internal error
//   2 invalid input: config/file parse failure, parameter violation, bad share set
//   3 IO failure
//   4 not enough shares (decoding ambiguous)
//   5 digest mismatch between share files and the public context
//   6 corrupted shares (inconsistent, not a codeword, bad point encoding, no isogeny)

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "isoshare/error.hpp"
#include "isoshare/isogeny.hpp"
#include "isoshare/scheme.hpp"
#include "isoshare/share_file.hpp"

namespace isoshare {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_invalid = 2,
    exit_io = 3,
    exit_not_enough_shares = 4,
    exit_digest_mismatch = 5,
    exit_corrupt = 6,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::io_error: return exit_io;
    case ErrorKind::not_enough_shares:
    case ErrorKind::ambiguous: return exit_not_enough_shares;
    case ErrorKind::digest_mismatch: return exit_digest_mismatch;
    case ErrorKind::inconsistent:
    case ErrorKind::not_a_codeword:
    case ErrorKind::invalid_encoding:
    case ErrorKind::not_on_curve:
    case ErrorKind::no_isogeny_found: return exit_corrupt;
    default: return exit_invalid;
    }
}

/// Independent sub-seeds from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint32_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32), tag};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t{out[0]} << 32) | out[1];
}

inline constexpr std::uint32_t walk_seed_tag = 1;
inline constexpr std::uint32_t point_seed_tag = 2;

inline void print_chain(std::ostream& out, const IsogenyChain& chain, const CurvePoint& P, const CurvePoint& image) {
    out << "P: " << P.to_string() << '\n';
    out << "P_image: " << image.to_string() << '\n';
    out << "degree: " << chain.degree() << '\n';
    out << "steps: " << chain.length() << '\n';
    for (std::size_t i = 0; i < chain.length(); ++i) {
        const auto& s = chain.steps()[i];
        out << "step." << i << ".kernel: " << s.kernel_generator().to_string() << '\n';
        out << "step." << i << ".j: " << j_invariant(s.codomain()).to_string() << '\n';
    }
    out << "isomorphism: " << chain.isomorphism().to_string() << '\n';
    out << "codomain: y^2 = x^3 + (" << chain.codomain().a().to_string() << ")x + (" << chain.codomain().b().to_string()
        << ")\n";
    out << "codomain.j: " << j_invariant(chain.codomain()).to_string() << '\n';
}

struct DealOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;
    bool force = false;
    bool show_secret = false;
};

inline int run_deal(const DealOptions& opt, std::ostream& out, std::ostream& err) {
    DealConfig cfg;
    try {
        cfg = load_config(opt.config);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    const auto& params = cfg.params;
    auto report = validate_params(params);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (!report.ok()) {
        for (const auto& v : report.violations) (opt.force ? err << "warning: " : out << "violation: ")
                                                    << to_string(v.kind) << ": " << v.detail << '\n';
        if (!opt.force) return exit_invalid;
    }
    std::uint64_t master = 0;
    if (opt.seed) master = *opt.seed;
    else if (cfg.seed) master = *cfg.seed;
    else {
        std::random_device rd;
        master = (std::uint64_t{rd()} << 32) | rd();
    }
    DealResult deal;
    try {
        auto chain = random_walk(params.curve, params.iso_prime, params.iso_exponent, derive_seed(master, walk_seed_tag));
        auto P = random_point_of_order(params.curve, params.torsion_order, derive_seed(master, point_seed_tag));
        deal = share_isogeny_path(chain, P, params, opt.force);
        if (opt.show_secret) print_chain(out, chain, P, evaluate_chain(chain, P));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::io_error ? exit_io : exit_invalid;
    }
    const auto digest = context_digest(deal.context);
    try {
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec) fail(ErrorKind::io_error, "cannot create " + opt.out_dir.string() + ": " + ec.message());
        for (const auto& s : deal.shares)
            write_atomic(opt.out_dir / ("share_" + std::to_string(s.index) + ".isoshare"), format_share(s, digest));
        write_atomic(opt.out_dir / "public.isoshare", format_public(deal.context));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    out << "status: ok\n";
    out << "digest: " << digest << '\n';
    out << "n: " << params.n << '\n';
    out << "t: " << params.t << '\n';
    out << "gamma: " << params.gamma << '\n';
    out << "public: " << (opt.out_dir / "public.isoshare").string() << '\n';
    return exit_ok;
}

inline int run_recover(const std::filesystem::path& public_path, const std::vector<std::filesystem::path>& share_paths,
                       std::ostream& out, std::ostream& err) {
    try {
        auto pub = parse_public(detail::read_file(public_path));
        std::vector<Share> shares;
        for (const auto& path : share_paths) {
            auto sf = parse_share(detail::read_file(path));
            if (sf.digest != pub.digest)
                fail(ErrorKind::digest_mismatch, path.string() + " belongs to a different deal");
            shares.push_back(std::move(sf.share));
        }
        const auto& params = pub.context.params;
        auto report = validate_params(params);
        const bool burst = report.burst && report.burst->holds();
        auto rec = burst ? burst_recover(shares, pub.context) : recover_isogeny_path(shares, pub.context);
        out << "status: ok\n";
        out << "decoder: " << (burst ? "burst" : "generic") << '\n';
        out << "shares_used: " << shares.size() << '\n';
        out << "erasures: " << rec.erasures << '\n';
        print_chain(out, rec.chain, rec.point, rec.image);
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        out << "status: " << to_string(e.kind()) << '\n';
        return exit_code_for(e.kind());
    }
}

inline int run_check(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    DealConfig cfg;
    try {
        cfg = load_config(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::io_error ? exit_io : exit_invalid;
    }
    const auto& params = cfg.params;
    auto rep = validate_params(params);
    out << "code.kind: " << to_string(params.code.kind) << '\n';
    out << "code.provenance: " << to_string(provenance(params.code.kind)) << '\n';
    out << "code.length: " << rep.code.length << '\n';
    out << "code.dimension: " << rep.code.dimension << '\n';
    out << "code.distance: " << rep.code.distance << (rep.code.distance_exact ? "" : " (lower bound)") << '\n';
    out << "n: " << params.n << '\n';
    out << "t: " << params.t << '\n';
    out << "gamma: " << params.gamma << '\n';
    out << "lambda: " << params.lambda << '\n';
    if (rep.interval.empty()) out << "interval: none\n" << "note: no valid t\n";
    else out << "interval: [" << rep.interval.lo << ", " << rep.interval.hi << "]\n";
    out << "erasures.worst_case: " << rep.worst_case_erasures << '\n';
    out << "erasures.correctable: " << rep.correctable_erasures << '\n';
    if (params.t <= params.n)
        for (std::size_t s = 0; s <= params.n; ++s) out << "cost.s" << s << ": " << attack_cost_bits(params, s) << '\n';
    if (rep.burst) {
        out << "burst.epsilon: " << rep.burst->epsilon << '\n';
        out << "burst.r_gt_gamma_minus_2: " << (rep.burst->r_exceeds_gamma_minus_2 ? "yes" : "no") << '\n';
        out << "burst.d_ge_2(n-t)+1: " << (rep.burst->distance_covers_double_erasures ? "yes" : "no") << '\n';
        if (!rep.burst->holds()) out << "burst.status: violated\n";
    }
    for (const auto& v : rep.violations) out << "violation: " << to_string(v.kind) << ": " << v.detail << '\n';
    for (const auto& w : rep.warnings) out << "warning: " << w << '\n';
    out << "status: " << (rep.ok() ? "valid" : "invalid") << '\n';
    return exit_ok;
}

} // namespace isoshare
