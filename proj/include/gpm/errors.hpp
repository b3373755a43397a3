#pragma once

#include <stdexcept>
#include <string>

namespace gpm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input shape problems: wrong vector/matrix size, zero modes.
struct DimensionError : Error {
    using Error::Error;
};

// A candidate subspace is not symplectic (singular or ill-conditioned Gram matrix).
struct DegenerateSubspaceError : Error {
    using Error::Error;
};

// An eigendecomposition failed to resolve the expected structure within tolerance.
struct NumericalDegeneracyError : Error {
    using Error::Error;
};

// A pure-state construction was handed a mixed state (or vice versa).
struct WrongPurityError : Error {
    using Error::Error;
};

// A state violates the uncertainty bound (some symplectic eigenvalue < 1).
struct UnphysicalStateError : Error {
    using Error::Error;
};

// A user-supplied eigenbasis fails the symplectic orthonormality conditions.
struct NonOrthonormalBasisError : Error {
    using Error::Error;
};

// A check that must hold by construction failed; indicates a numerical or input problem.
struct InternalConsistencyError : Error {
    using Error::Error;
};

// Malformed input document; `where` locates the offending field.
struct DocumentError : Error {
    DocumentError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), location(where) {}
    std::string location;
};

}  // namespace gpm
