#pragma once

#include <stdexcept>
#include <string>

namespace parsum {

/// Input lies outside the domain of an operation (non-PD argument, eigenvalue
/// below the power floor, dimension mismatch).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative routine hit its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// H - A:B has a negative eigenvalue beyond tolerance, so F(C) = H has no solution.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A scalar or structural parameter is out of its admissible range.
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed matrix or config input.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace parsum
