#pragma once

#include <stdexcept>
#include <string>

namespace kronbound {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: indices out of range, unknown preset, malformed input.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The matrix is not symmetric positive definite, so the bound machinery
/// does not apply.
class NotSpdError : public Error {
public:
    using Error::Error;
};

/// A bound formula was asked for outside of its hypotheses
/// (e.g. the closed-form bounds at mesh distance zero).
class InapplicableBound : public Error {
public:
    using Error::Error;
};

/// Quadrature sampled a non-finite integrand value.
class QuadratureError : public Error {
public:
    using Error::Error;
};

} // namespace kronbound
