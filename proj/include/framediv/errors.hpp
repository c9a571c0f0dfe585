#pragma once

#include <stdexcept>

namespace framediv {

// Base type for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenvalue list fails the pairwise-distinctness requirement of an
// operation with simple poles at coincident eigenvalues.
struct DegenerateSpectrum : Error { using Error::Error; };

// The zero-eigenvalue convention was requested but the spectrum has no
// (unique) zero entry.
struct ZeroConventionViolated : Error { using Error::Error; };

// Q' has non-simple or non-real critical points beyond tolerance.
struct DegenerateCriticalPoints : Error { using Error::Error; };

// Imaginary parts of a root set exceed tolerance.
struct ComplexRootsDetected : Error { using Error::Error; };

// Numerically inverted threshold ordering; signals upstream corruption.
struct EmptyInterval : Error { using Error::Error; };

// Metric not invertible / not positive definite at a sample point.
struct SingularMetric : Error { using Error::Error; };

// A finite-difference consistency residual exceeds its bound, which
// usually means the derivative step is misconfigured for the callback.
struct StepTooLarge : Error { using Error::Error; };

// An integration over a closed manifold was requested on a chart with a
// non-periodic axis.
struct NotClosed : Error { using Error::Error; };

// Operation requires a Codazzi field and the total-symmetry residual of
// the input exceeds tolerance.
struct NotCodazzi : Error { using Error::Error; };

// A constancy hypothesis required by an identity fails numerically.
struct HypothesisViolated : Error { using Error::Error; };

// Differential of an immersion drops rank at a sample point.
struct RankDeficient : Error { using Error::Error; };

struct BadParameters : Error { using Error::Error; };

// Expression text could not be parsed.
struct ParseError : Error { using Error::Error; };

// Suite configuration is malformed or references unknown fixtures.
struct ConfigError : Error { using Error::Error; };

} // namespace framediv
