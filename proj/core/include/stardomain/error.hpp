#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stardomain {

enum class ErrorCode {
    InvalidDomain,
    OutOfDomain,
    RootNotBracketed,
    InvertedElement,
    NotPositiveDefinite,
    DimensionMismatch,
    KernelSeparationFailure,
    InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every stardomain component.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by mesh operations; carries the offending triangle.
class InvertedElementError : public Error {
public:
    InvertedElementError(std::size_t triangle, const std::string& message)
        : Error(ErrorCode::InvertedElement, message), triangle_(triangle) {}

    std::size_t triangle() const noexcept { return triangle_; }

private:
    std::size_t triangle_;
};

} // namespace stardomain
