#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadml {

/// Parameter or argument outside the domain where a quantity is defined.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model failed validation; carries every violated constraint, not only the first.
class ParameterError : public DomainError {
public:
    explicit ParameterError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// A series term (or a final value) is not representable as a finite double.
class OverflowError : public std::overflow_error {
public:
    OverflowError(const std::string& what, std::size_t index);

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The series path cannot represent the requested operator action (RL derivative of a constant).
class UnsupportedTermError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A user-supplied callable returned a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A cumulative distribution did not reach the required mass within the support cap.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hadml
