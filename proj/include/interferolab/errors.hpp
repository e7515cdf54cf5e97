#pragma once

#include <stdexcept>
#include <string>

namespace interferolab {

/// Bad input: a matrix that is not unitary/subunitary, an efficiency outside
/// [0, 1], a malformed file. Maps to CLI exit status 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A netlist whose structure cannot be evaluated (beam index out of range,
/// repeated beam in a splitter pair, wrong state width).
class StructuralError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The data cannot determine the requested estimate (rank-deficient design).
/// Maps to CLI exit status 1.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace interferolab
