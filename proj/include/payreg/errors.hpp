#pragma once

#include <stdexcept>
#include <string>

namespace payreg {

enum class errc {
    invalid_profile,
    invalid_distribution,
    field_mismatch,
    invalid_direction,
    invalid_tolerance,
    invalid_weights,
    unsupported_arity,
    planar_only,
    invalid_input,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_profile: return "InvalidProfile";
        case errc::invalid_distribution: return "InvalidDistribution";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::invalid_direction: return "InvalidDirection";
        case errc::invalid_tolerance: return "InvalidTolerance";
        case errc::invalid_weights: return "InvalidWeights";
        case errc::unsupported_arity: return "UnsupportedArity";
        case errc::planar_only: return "PlanarOnly";
        case errc::invalid_input: return "InvalidInput";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Library-wide exception. `code()` identifies the contract that was violated.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace payreg
