#pragma once

#include <stdexcept>
#include <string>

namespace gme {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input matrix contains NaN or infinity.
class NonFiniteEntry : public Error {
public:
    using Error::Error;
};

/// Input matrix deviates from symmetry by more than the stated tolerance.
class AsymmetricInput : public Error {
public:
    using Error::Error;
};

/// The biquadratic for the symplectic spectrum has no real roots; the matrix
/// is far outside the state space and negativity is meaningless for it.
class ComplexSpectrum : public Error {
public:
    using Error::Error;
};

/// det V <= 0, so the Gaussian density is undefined.
class SingularCovariance : public Error {
public:
    using Error::Error;
};

/// Operation requires a physical covariance matrix (V >= (i/2) sigma).
class NotPhysical : public Error {
public:
    using Error::Error;
};

/// Squeeze factors must be strictly positive.
class NonPositiveSqueeze : public Error {
public:
    using Error::Error;
};

/// A data file could not be parsed or violates the file-format invariants.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gme
