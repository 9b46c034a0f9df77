#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoshare {

enum class ErrorKind {
    division_by_zero,
    length_mismatch,
    not_on_curve,
    singular_curve,
    no_such_order,
    bad_kernel,
    no_isogeny_found,
    length_too_small,
    identity_not_encodable,
    invalid_encoding,
    bad_distance,
    inconsistent,
    ambiguous,
    not_a_codeword,
    too_large,
    invalid_params,
    not_enough_shares,
    duplicate_share,
    invalid_argument,
    parse_error,
    digest_mismatch,
    io_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::length_mismatch: return "LengthMismatch";
    case ErrorKind::not_on_curve: return "NotOnCurve";
    case ErrorKind::singular_curve: return "SingularCurve";
    case ErrorKind::no_such_order: return "NoSuchOrder";
    case ErrorKind::bad_kernel: return "BadKernel";
    case ErrorKind::no_isogeny_found: return "NoIsogenyFound";
    case ErrorKind::length_too_small: return "LengthTooSmall";
    case ErrorKind::identity_not_encodable: return "IdentityNotEncodable";
    case ErrorKind::invalid_encoding: return "InvalidEncoding";
    case ErrorKind::bad_distance: return "BadDistance";
    case ErrorKind::inconsistent: return "Inconsistent";
    case ErrorKind::ambiguous: return "Ambiguous";
    case ErrorKind::not_a_codeword: return "NotACodeword";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::invalid_params: return "InvalidParams";
    case ErrorKind::not_enough_shares: return "NotEnoughShares";
    case ErrorKind::duplicate_share: return "DuplicateShare";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::digest_mismatch: return "DigestMismatch";
    case ErrorKind::io_error: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace isoshare
