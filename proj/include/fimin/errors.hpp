#pragma once

#include <stdexcept>
#include <string>

namespace fimin {

/// Input values outside the mathematical domain of an operation
/// (vanishing moments, non-confining potentials, sigma^2 <= 0, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// A caller broke an API precondition (mismatched order sets, missing
/// lower-order moments, unnormalized amplitude where one is required).
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

/// An iterative method failed to converge within its budget.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, int iterations)
        : std::runtime_error(what), iterations(iterations) {}
    int iterations;
};

/// Malformed request or file: wrong schema, unknown fields, bad CSV layout.
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fimin
