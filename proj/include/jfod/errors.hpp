#pragma once

#include <stdexcept>
#include <string>

namespace jfod {

// Every library failure derives from Error so callers can map families of
// failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data breaks a documented domain invariant (ordering, positivity, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class NonHermitianInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidWeights : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidProblem : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class MajorizationViolated : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DegenerateVector : public Error {
public:
    using Error::Error;
};

// A computation that the theory guarantees to succeed did not.
class InternalContradiction : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

}  // namespace jfod
