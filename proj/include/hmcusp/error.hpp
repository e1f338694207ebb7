#pragma once

#include <stdexcept>
#include <string>

namespace hmcusp {

// All domain errors carry a machine-readable kind (surfaced as error.kind in
// CLI JSON output) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

namespace errkind {
inline constexpr const char* NonFundamentalDiscriminant = "NonFundamentalDiscriminant";
inline constexpr const char* NotRealQuadratic = "NotRealQuadratic";
inline constexpr const char* ZeroIdeal = "ZeroIdeal";
inline constexpr const char* NotIntegral = "NotIntegral";
inline constexpr const char* PoleAtOne = "PoleAtOne";
inline constexpr const char* AccuracyNotReached = "AccuracyNotReached";
inline constexpr const char* ClassNumberNotOne = "ClassNumberNotOne";
inline constexpr const char* NarrowClassNumberNotOne = "NarrowClassNumberNotOne";
inline constexpr const char* NormalizationMismatch = "NormalizationMismatch";
inline constexpr const char* NotReduced = "NotReduced";
inline constexpr const char* NotAUnitPower = "NotAUnitPower";
inline constexpr const char* InsufficientCoefficients = "InsufficientCoefficients";
inline constexpr const char* NotInConvergenceRegion = "NotInConvergenceRegion";
inline constexpr const char* NonVanishingConstantCoefficient = "NonVanishingConstantCoefficient";
inline constexpr const char* IdentityFails = "IdentityFails";
inline constexpr const char* NotClosed = "NotClosed";
inline constexpr const char* InvalidKey = "InvalidKey";
inline constexpr const char* BadInput = "BadInput";
inline constexpr const char* CacheMismatch = "CacheMismatch";
inline constexpr const char* Usage = "Usage";
inline constexpr const char* Internal = "Internal";
}  // namespace errkind

}  // namespace hmcusp
