#pragma once

#include <stdexcept>
#include <string>

namespace edslab {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (CLI exit code 2).
struct InputError : Error {
    using Error::Error;
};

// A mathematical hypothesis of the requested computation fails
// (singular/supersingular reduction, order-2 point, ...; CLI exit code 3).
struct GateError : Error {
    using Error::Error;
};

struct NotPrime : InputError {
    using InputError::InputError;
};
struct NonUnitDenominator : InputError {
    using InputError::InputError;
};
struct NonUnit : InputError {
    using InputError::InputError;
};
struct NotCoprime : InputError {
    using InputError::InputError;
};
struct PrecisionMismatch : InputError {
    using InputError::InputError;
};
struct RingMismatch : InputError {
    using InputError::InputError;
};
struct BadCoefficients : InputError {
    using InputError::InputError;
};
struct PointAtInfinity : InputError {
    using InputError::InputError;
};
struct NonIntegralPoint : InputError {
    using InputError::InputError;
};
struct ImproperResult : InputError {
    using InputError::InputError;
};
struct NonIntegralStep : InputError {
    using InputError::InputError;
};
struct BoundTooSmall : InputError {
    using InputError::InputError;
};
struct ZeroDenominator : Error {
    using Error::Error;
};

struct SingularReduction : GateError {
    using GateError::GateError;
};
struct SupersingularReduction : GateError {
    using GateError::GateError;
};
struct TrivialPoint : GateError {
    using GateError::GateError;
};
struct OrderTwo : GateError {
    using GateError::GateError;
};
struct PEqualsTwo : GateError {
    using GateError::GateError;
};
struct OrderDivisibleByP : GateError {
    using GateError::GateError;
};
struct NonUnitDivisor : GateError {
    using GateError::GateError;
};
struct InadmissiblePrime : GateError {
    using GateError::GateError;
};
struct DegenerateValuation : GateError {
    using GateError::GateError;
};

} // namespace edslab
