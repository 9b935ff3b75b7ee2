// errors.hpp — Exception hierarchy. The CLI maps each family onto an exit code.

#pragma once

#include <stdexcept>
#include <string>

namespace dqd {

// Bad user input: unparsable config, missing field, violated parameter invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation could not reach its requested accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A conserved quantity or state invariant was broken during a run.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// epsilon = omega = 0: the two-level Hamiltonian has no preferred axis.
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TruncationOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// I_1 + I_2 = 0 in the stationary-current closed form.
class DivisionByZeroError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace dqd
