#include "ogus/errors.hpp"

namespace ogus {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::RamifiedOrEvenPlace: return "RamifiedOrEvenPlace";
    case ErrorKind::DenominatorNotUnit: return "DenominatorNotUnit";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotPrincipalUnit: return "NotPrincipalUnit";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotMonicNormalizable: return "NotMonicNormalizable";
    case ErrorKind::MixedNonIntegralWeight: return "MixedNonIntegralWeight";
    case ErrorKind::CharpolyMismatch: return "CharpolyMismatch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::FiltrationNotCoordinateAligned: return "FiltrationNotCoordinateAligned";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::NotAGoodPlace: return "NotAGoodPlace";
    case ErrorKind::IncompatibleHom: return "IncompatibleHom";
    case ErrorKind::NotLEffective: return "NotLEffective";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace ogus
