#include "hopflat/error.hpp"

#include <sstream>

namespace hopflat {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::AxiomViolation: return "AxiomViolation";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotAGroup: return "NotAGroup";
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::StarUndefined: return "StarUndefined";
        case ErrorKind::NoHaarIntegral: return "NoHaarIntegral";
        case ErrorKind::NonUniqueHaar: return "NonUniqueHaar";
        case ErrorKind::NonPositive: return "NonPositive";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NonManifold: return "NonManifold";
        case ErrorKind::EulerMismatch: return "EulerMismatch";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
        case ErrorKind::SiteInvalid: return "SiteInvalid";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ProjectorCheckFailed: return "ProjectorCheckFailed";
        case ErrorKind::DimensionCap: return "DimensionCap";
        case ErrorKind::BoundaryPresent: return "BoundaryPresent";
        case ErrorKind::MissingBoundaryLabels: return "MissingBoundaryLabels";
        case ErrorKind::ZeroState: return "ZeroState";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& check,
                    std::optional<double> residual) {
    std::ostringstream os;
    os << to_string(kind);
    if (!check.empty()) os << "(" << check << ")";
    if (residual) os << " residual=" << *residual;
    if (!message.empty()) os << ": " << message;
    return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::string check,
             std::optional<double> residual)
    : std::runtime_error(compose(kind, message, check, residual)),
      kind_(kind),
      check_(std::move(check)),
      residual_(residual) {}

}  // namespace hopflat
