#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopflat {

enum class ErrorKind {
    AxiomViolation,
    ShapeMismatch,
    NotAGroup,
    AlgebraMismatch,
    StarUndefined,
    NoHaarIntegral,
    NonUniqueHaar,
    NonPositive,
    ParseError,
    NonManifold,
    EulerMismatch,
    UnknownFixture,
    SiteInvalid,
    DimensionMismatch,
    ProjectorCheckFailed,
    DimensionCap,
    BoundaryPresent,
    MissingBoundaryLabels,
    ZeroState,
};

std::string_view to_string(ErrorKind kind);

/// Library error carrying a machine-readable kind, an optional check name and residual.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string check = {},
          std::optional<double> residual = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& check() const noexcept { return check_; }
    std::optional<double> residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    std::string check_;
    std::optional<double> residual_;
};

}  // namespace hopflat
