#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robin {

enum class ErrorKind {
    invalid_argument,
    invalid_coefficient,
    degenerate_mesh,
    singular_system,
    numeric_breakdown,
    non_convergence,
    unsupported_dimension,
    no_informative_pairs,
};

/// Machine-readable tag, e.g. "invalid-coefficient".
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace robin
