#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ogus {

enum class ErrorKind {
    RamifiedOrEvenPlace,
    DenominatorNotUnit,
    NotAUnit,
    NotPrincipalUnit,
    NotInDomain,
    DimensionMismatch,
    NotMonicNormalizable,
    MixedNonIntegralWeight,
    CharpolyMismatch,
    PrecisionExhausted,
    FiltrationNotCoordinateAligned,
    ReconstructionFailed,
    NotAGoodPlace,
    IncompatibleHom,
    NotLEffective,
    NonPositiveEntry,
    ConfigParse,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; kind() is the
// machine-readable tag that the CLI prints as ERROR(<kind>).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ogus
