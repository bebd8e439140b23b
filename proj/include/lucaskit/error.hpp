#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lucaskit {

enum class ErrorCode {
    invalid_argument,
    iter_cap_exceeded,
    negative_index_unsupported_fast_path,
    unknown_identity,
    invalid_range,
    trace_unsupported,
    invalid_base,
    insufficient_probes,
    parse_error,
    bind_error,
    unbound_variable,
    negative_exponent,
    exponent_too_large,
    index_out_of_range,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::iter_cap_exceeded: return "ITER_CAP_EXCEEDED";
    case ErrorCode::negative_index_unsupported_fast_path: return "NEGATIVE_INDEX_UNSUPPORTED_FAST_PATH";
    case ErrorCode::unknown_identity: return "UNKNOWN_IDENTITY";
    case ErrorCode::invalid_range: return "INVALID_RANGE";
    case ErrorCode::trace_unsupported: return "TRACE_UNSUPPORTED";
    case ErrorCode::invalid_base: return "INVALID_BASE";
    case ErrorCode::insufficient_probes: return "INSUFFICIENT_PROBES";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::bind_error: return "BIND_ERROR";
    case ErrorCode::unbound_variable: return "UNBOUND_VARIABLE";
    case ErrorCode::negative_exponent: return "NEGATIVE_EXPONENT";
    case ErrorCode::exponent_too_large: return "EXPONENT_TOO_LARGE";
    case ErrorCode::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    }
    return "UNKNOWN";
}

/// Exception carrying a machine-readable code. Parse errors additionally
/// carry the byte offset of the failure and a description of what was
/// expected there.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Error(ErrorCode code, std::string message, std::size_t offset, std::string expected)
        : std::runtime_error(std::string(to_string(code)) + " at byte " + std::to_string(offset) +
                             ": " + message + " (expected " + expected + ")"),
          code_(code), offset_(offset), expected_(std::move(expected)) {}

    ErrorCode code() const noexcept { return code_; }
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    ErrorCode code_;
    std::size_t offset_ = no_offset;
    std::string expected_;
};

} // namespace lucaskit
