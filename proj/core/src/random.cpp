#include "stardomain/random.hpp"
#include "stardomain/error.hpp"

#include <cmath>
#include <numbers>

namespace stardomain {

double CounterRng::normal() noexcept {
    // 1 - u keeps the log argument in (0, 1]
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::InvertedElement: return "InvertedElement";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::KernelSeparationFailure: return "KernelSeparationFailure";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

} // namespace stardomain
