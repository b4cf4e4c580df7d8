#pragma once

#include <stdexcept>
#include <string>

namespace qdh {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation at a pole (Gamma at a non-positive integer, coth_q at its zero, ...).
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// API misuse: wrong kind/parameter combination, out-of-range level index, ...
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

// A numerical procedure failed to converge or produced non-finite values.
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace qdh
