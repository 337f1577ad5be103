#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfauth {

enum class ErrorCode {
    UnsupportedFormat,
    MalformedHeader,
    MalformedData,
    Truncated,
    OddDimensions,
    DimensionMismatch,
    CapacityMismatch,
    OddPlaneLength,
    RangeViolation,
    ZeroReference,
    InvalidKey,
    Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedData: return "MalformedData";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::OddDimensions: return "OddDimensions";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CapacityMismatch: return "CapacityMismatch";
    case ErrorCode::OddPlaneLength: return "OddPlaneLength";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace selfauth
