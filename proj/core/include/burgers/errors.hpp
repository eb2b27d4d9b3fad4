#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidWindow : Error { using Error::Error; };
struct DegenerateMeasure : Error { using Error::Error; };
struct OutOfWindow : Error { using Error::Error; };
struct NonCausalSegment : Error { using Error::Error; };
struct NonCausalField : Error { using Error::Error; };
struct NonCausalQuery : Error { using Error::Error; };
struct InvalidPath : Error { using Error::Error; };
struct UnboundedPotential : Error { using Error::Error; };
struct OracleTooLarge : Error { using Error::Error; };
struct InvalidDomain : Error { using Error::Error; };
struct OutOfModelRange : Error { using Error::Error; };
struct IncomparableProfiles : Error { using Error::Error; };
struct NotStabilized : Error { using Error::Error; };
struct StabilizationBudgetExceeded : Error { using Error::Error; };
struct NonNegativeS : Error { using Error::Error; };
struct TooFewAnchors : Error { using Error::Error; };
struct WindingTruncation : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace burgers
