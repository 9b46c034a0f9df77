#pragma once

// Text formats: dealer config, public context file, share files.
//
// Config: flat `key = value` lines, `#` starts a comment.
// Public file: `ISOSHARE-PUBLIC 1`, `digest <hex>`, then `key value` lines.
// Share file: `ISOSHARE 1`, `digest <hex>`, `index <i>`, `gamma <g>`, `bits <hex>`.
// The digest is SHA-256 over the canonical context text.

#include <openssl/sha.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "isoshare/bits.hpp"
#include "isoshare/error.hpp"
#include "isoshare/prime_field.hpp"
#include "isoshare/scheme.hpp"

namespace isoshare {

inline constexpr std::string_view share_header = "ISOSHARE 1";
inline constexpr std::string_view public_header = "ISOSHARE-PUBLIC 1";

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view text, int base = 10) {
    text = trim(text);
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        fail(ErrorKind::parse_error, "bad number for " + std::string(key) + ": '" + std::string(text) + "'");
    return value;
}

/// "c0" or "c0,c1"; components may be negative.
inline Fp2 parse_fp2(std::string_view key, std::string_view text, std::uint64_t p) {
    auto comma = text.find(',');
    auto c0 = parse_number<std::int64_t>(key, text.substr(0, comma));
    std::int64_t c1 = comma == std::string_view::npos ? 0 : parse_number<std::int64_t>(key, text.substr(comma + 1));
    return Fp2(Fp::from_signed(c0, p), Fp::from_signed(c1, p));
}

inline std::string format_fp2(const Fp2& v) {
    return std::to_string(v.c0().value()) + "," + std::to_string(v.c1().value());
}

inline std::optional<CodeKind> parse_code_kind(std::string_view s) {
    for (auto k : {CodeKind::block_rs, CodeKind::subfield_hyperoval, CodeKind::binary_expanded_rs,
                   CodeKind::abstract_generic})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

using KeyValues = std::map<std::string, std::string, std::less<>>;

class KeyReader {
public:
    explicit KeyReader(KeyValues kv) : kv_(std::move(kv)) {}

    bool has(std::string_view key) const { return kv_.find(key) != kv_.end(); }

    const std::string& raw(std::string_view key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) fail(ErrorKind::parse_error, "missing key '" + std::string(key) + "'");
        used_.insert(std::string(key));
        return it->second;
    }

    template <class T>
    T number(std::string_view key) { return parse_number<T>(key, raw(key)); }

    template <class T>
    T number_or(std::string_view key, T fallback) { return has(key) ? number<T>(key) : fallback; }

    void reject_unknown() const {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k)) fail(ErrorKind::parse_error, "unknown key '" + k + "'");
    }

private:
    KeyValues kv_;
    std::set<std::string, std::less<>> used_;
};

/// Shared between config and public files.
inline SchemeParams read_params(KeyReader& in) {
    SchemeParams sp;
    const auto p = in.number<std::uint64_t>("p");
    auto a = parse_fp2("curve.a", in.raw("curve.a"), p);
    auto b = parse_fp2("curve.b", in.raw("curve.b"), p);
    try {
        sp.curve = CurveSpec(a, b);
    } catch (const Error& e) {
        fail(ErrorKind::parse_error, std::string("curve: ") + e.what());
    }
    sp.torsion_order = in.number<std::uint64_t>("N");
    sp.iso_prime = in.number<std::uint64_t>("ell_iso");
    sp.iso_exponent = in.number<unsigned>("e_iso");
    sp.n = in.number<std::size_t>("n");
    sp.t = in.number<std::size_t>("t");
    sp.gamma = in.number<std::size_t>("gamma");
    sp.lambda = in.number_or<std::size_t>("lambda", 128);
    if (in.has("code.kind")) {
        auto kind = parse_code_kind(in.raw("code.kind"));
        if (!kind) fail(ErrorKind::parse_error, "unknown code.kind '" + in.raw("code.kind") + "'");
        sp.code.kind = *kind;
    }
    sp.code.r = in.number_or<unsigned>("code.r", 0);
    sp.code.d = in.number_or<unsigned>("code.d", 0);
    sp.code.m = in.number_or<unsigned>("code.m", 0);
    sp.code.length = in.number_or<std::size_t>("code.length", 0);
    sp.code.dimension = in.number_or<std::size_t>("code.dimension", 0);
    sp.code.distance = in.number_or<std::size_t>("code.distance", 0);
    return sp;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io_error, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        lines.push_back(trim(text.substr(0, nl)));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

} // namespace detail

struct DealConfig {
    SchemeParams params;
    std::optional<std::uint64_t> seed;
};

inline DealConfig parse_config(std::string_view text) {
    detail::KeyValues kv;
    std::size_t lineno = 0;
    for (auto line : detail::split_lines(text)) {
        ++lineno;
        line = detail::trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected key = value");
        std::string key(detail::trim(line.substr(0, eq)));
        if (!kv.emplace(key, std::string(detail::trim(line.substr(eq + 1)))).second)
            fail(ErrorKind::parse_error, "duplicate key '" + key + "'");
    }
    detail::KeyReader in(std::move(kv));
    DealConfig cfg;
    cfg.params = detail::read_params(in);
    if (in.has("seed")) cfg.seed = detail::parse_number<std::uint64_t>("seed", in.raw("seed"), 16);
    in.reject_unknown();
    return cfg;
}

inline DealConfig load_config(const std::filesystem::path& path) { return parse_config(detail::read_file(path)); }

/// Canonical `key value` lines for the public context, in fixed order.
inline std::string context_text(const PublicContext& ctx) {
    const auto& sp = ctx.params;
    std::ostringstream o;
    o << "p " << sp.curve.p() << '\n'
      << "curve.a " << detail::format_fp2(sp.curve.a()) << '\n'
      << "curve.b " << detail::format_fp2(sp.curve.b()) << '\n'
      << "e1.a " << detail::format_fp2(ctx.e1.a()) << '\n'
      << "e1.b " << detail::format_fp2(ctx.e1.b()) << '\n'
      << "N " << sp.torsion_order << '\n'
      << "ell_iso " << sp.iso_prime << '\n'
      << "e_iso " << sp.iso_exponent << '\n'
      << "n " << sp.n << '\n'
      << "t " << sp.t << '\n'
      << "gamma " << sp.gamma << '\n'
      << "lambda " << sp.lambda << '\n'
      << "code.kind " << to_string(sp.code.kind) << '\n'
      << "code.r " << sp.code.r << '\n'
      << "code.d " << sp.code.d << '\n'
      << "code.m " << sp.code.m << '\n';
    if (sp.code.kind == CodeKind::abstract_generic)
        o << "code.length " << sp.code.length << '\n'
          << "code.dimension " << sp.code.dimension << '\n'
          << "code.distance " << sp.code.distance << '\n';
    return o.str();
}

inline std::string sha256_hex(std::string_view data) {
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (auto byte : md) {
        out += digits[byte >> 4];
        out += digits[byte & 15];
    }
    return out;
}

inline std::string context_digest(const PublicContext& ctx) { return sha256_hex(context_text(ctx)); }

struct PublicFile {
    PublicContext context;
    std::string digest;
};

inline std::string format_public(const PublicContext& ctx) {
    return std::string(public_header) + "\ndigest " + context_digest(ctx) + "\n" + context_text(ctx);
}

inline PublicFile parse_public(std::string_view text) {
    auto lines = detail::split_lines(text);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 2 || lines[0] != public_header) fail(ErrorKind::parse_error, "not a public context file");
    if (lines[1].substr(0, 7) != "digest ") fail(ErrorKind::parse_error, "public file: missing digest line");
    std::string digest(detail::trim(lines[1].substr(7)));
    detail::KeyValues kv;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto sp = lines[i].find(' ');
        if (sp == std::string_view::npos) fail(ErrorKind::parse_error, "public file: bad line " + std::to_string(i + 1));
        if (!kv.emplace(std::string(lines[i].substr(0, sp)), std::string(detail::trim(lines[i].substr(sp + 1)))).second)
            fail(ErrorKind::parse_error, "public file: duplicate key on line " + std::to_string(i + 1));
    }
    detail::KeyReader in(std::move(kv));
    PublicFile out;
    out.context.params = detail::read_params(in);
    const auto p = out.context.params.curve.p();
    try {
        out.context.e1 = CurveSpec(detail::parse_fp2("e1.a", in.raw("e1.a"), p), detail::parse_fp2("e1.b", in.raw("e1.b"), p));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse_error) throw;
        fail(ErrorKind::parse_error, std::string("e1: ") + e.what());
    }
    in.reject_unknown();
    out.digest = digest;
    if (context_digest(out.context) != digest) fail(ErrorKind::digest_mismatch, "public file digest does not match its context");
    return out;
}

struct ShareFile {
    std::string digest;
    Share share;
};

inline std::string format_share(const Share& share, std::string_view digest) {
    std::ostringstream o;
    o << share_header << '\n'
      << "digest " << digest << '\n'
      << "index " << share.index << '\n'
      << "gamma " << share.bits.size() << '\n'
      << "bits " << to_hex(share.bits) << '\n';
    return o.str();
}

inline ShareFile parse_share(std::string_view text) {
    auto lines = detail::split_lines(text);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() != 5 || lines[0] != share_header) fail(ErrorKind::parse_error, "not a share file");
    auto field = [&](std::size_t i, std::string_view key) {
        auto line = lines[i];
        if (line.substr(0, key.size() + 1) != std::string(key) + " ")
            fail(ErrorKind::parse_error, "share file line " + std::to_string(i + 1) + ": expected '" +
                                             std::string(key) + "'");
        return detail::trim(line.substr(key.size() + 1));
    };
    ShareFile out;
    out.digest = std::string(field(1, "digest"));
    out.share.index = detail::parse_number<std::size_t>("index", field(2, "index"));
    auto gamma = detail::parse_number<std::size_t>("gamma", field(3, "gamma"));
    try {
        out.share.bits = from_hex(field(4, "bits"), gamma);
    } catch (const Error& e) {
        fail(ErrorKind::parse_error, std::string("share bits: ") + e.what());
    }
    return out;
}

/// Writes via a temporary sibling and rename.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io_error, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorKind::io_error, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(ErrorKind::io_error, "cannot rename into " + path.string() + ": " + ec.message());
}

} // namespace isoshare
